"""Command-line frontend.

One experiment per invocation; every run echoes its configuration and seed in
the output preamble, so identical invocations produce byte-identical files.
Exit codes: 0 success, 1 invalid configuration, 2 a checked contract failed
(the violating row is printed to stderr).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .tables import Table, write_table

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONTRACT = 2


class CliError(Exception):
    """Configuration problem: exits with code 1."""


class ContractViolation(Exception):
    """A checked quantitative contract failed: exits with code 2."""

    def __init__(self, message: str, row=None):
        super().__init__(message)
        self.row = row


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _parse_points(spec: str) -> list[tuple[int, int]]:
    pts = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        a, b = part.split(",")
        pts.append((int(a), int(b)))
    if not pts:
        raise CliError(f"no points in {spec!r}")
    return pts


def _load_config_defaults(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CliError(f"bad config line {line!r}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def build_parser() -> _Parser:
    p = _Parser(prog="rwlab", description="desk-scale long-range walk and network experiments")
    p.add_argument("--version", action="version", version=f"rwlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=None,
                        help="rng seed; falls back to RWLAB_SEED, then 0")
        sp.add_argument("--out", default=None, help="output path (stdout when omitted)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--config", default=None, help="key=value defaults file; flags override")
        sp.add_argument("--threads", type=int, default=1, help="worker cap for parallel parts")

    w = sub.add_parser("walk", help="step-law walks: simulation and exact convolution checks")
    common(w)
    w.add_argument("--dist", choices=("cauchy", "powerlaw"), default="cauchy")
    w.add_argument("--d", type=int, default=1)
    w.add_argument("--s", type=float, default=2.0)
    w.add_argument("--R", type=int, default=64)
    w.add_argument("--norm", choices=("inf", "euclidean"), default="inf")
    w.add_argument("--mode", "--check", dest="mode",
                   choices=("simulate", "halfmass", "convolve"), default="halfmass")
    w.add_argument("--n", type=int, default=10, help="convolution step count")
    w.add_argument("--T", type=int, default=1000)
    w.add_argument("--trials", type=int, default=200)
    w.add_argument("--radius", type=int, default=10_000, help="convolution window radius")

    c = sub.add_parser("conductance", help="effective conductance on a serialized network")
    common(c)
    c.add_argument("--network", required=True)
    c.add_argument("--source", required=True, help='vertex list "x,y;x,y"')
    c.add_argument("--sink", required=True)

    f = sub.add_parser("flow", help="dyadic box flow to infinity with stage energies")
    common(f)
    f.add_argument("--d", type=int, default=2)
    f.add_argument("--s", type=float, default=3.5)
    f.add_argument("--K", type=int, default=2)
    f.add_argument("--kmax", type=int, default=12)
    f.add_argument("--materialize", type=int, default=None)

    l = sub.add_parser("loads", help="exact hierarchy-path edge loads and threshold counts")
    common(l)
    l.add_argument("--k", type=int, required=True)

    rw = sub.add_parser("rewire", help="rewired short-range weights: tails and comparisons")
    common(rw)
    rw.add_argument("--task", choices=("tail", "compare", "field"), default="tail")
    rw.add_argument("--kmax", type=int, default=None,
                    help="defaults: 6 for tail, 2 for compare/field (padding grows as 8*3^k)")
    rw.add_argument("--samples", type=int, default=20_000)
    rw.add_argument("--edge", default="0,0;1,0", help='short edge "x,y;x,y"')
    rw.add_argument("--core", type=int, default=20)
    rw.add_argument("--realizations", type=int, default=3)
    rw.add_argument("--radius", type=int, default=6, help="field window radius")

    rc = sub.add_parser("rcm", help="weight-dependent random connection model")
    common(rc)
    rc.add_argument("--task", choices=("sample", "tail", "delta-eff", "discretize", "walk"),
                    default="tail")
    rc.add_argument("--kernel", choices=("sum", "min", "prod", "pa"), default="min")
    rc.add_argument("--gamma", type=float, default=0.4)
    rc.add_argument("--beta", type=float, default=1.0)
    rc.add_argument("--delta", type=float, default=2.5)
    rc.add_argument("--L", type=float, default=12.0)
    rc.add_argument("--rmax", type=int, default=1024)
    rc.add_argument("--T", type=int, default=2000)
    rc.add_argument("--sample-file", default=None, help="rcm sample input for discretize/walk")
    rc.add_argument("--expect", choices=("bounded", "diverging"), default=None)

    dm = sub.add_parser("domination", help="random-weight conductance domination checks")
    common(dm)
    dm.add_argument("--mode", choices=("exact", "mc"), default="exact")
    dm.add_argument("--networks", type=int, default=10)
    dm.add_argument("--max-edges", type=int, default=8)
    dm.add_argument("--vertices", type=int, default=8)
    dm.add_argument("--trials", type=int, default=400)
    return p


def _meta(args, extra: dict | None = None) -> dict[str, str]:
    skip = {"out", "config", "seed"}
    meta = {"version": __version__, "cmd": args.command}
    for k, v in sorted(vars(args).items()):
        if k in skip or k == "command" or v is None:
            continue
        meta[k] = str(v)
    meta["seed"] = str(_seed(args))  # the effective seed, wherever it came from
    if extra:
        meta.update({k: str(v) for k, v in extra.items()})
    return meta


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RWLAB_SEED")
    return int(env) if env else 0


def _make_dist(args):
    from .stepdist import discretized_cauchy, power_law_pmf

    if args.dist == "cauchy":
        if args.d != 1:
            raise CliError("the discretized Cauchy step is one-dimensional")
        return discretized_cauchy()
    return power_law_pmf(args.d, args.s, args.R, args.norm)


# -- subcommand bodies -----------------------------------------------------------


def _run_walk(args) -> Table:
    from .walks import convolve_pmf, halfmass_check, simulate

    dist = _make_dist(args)
    seed = _seed(args)
    if args.mode == "simulate":
        stats = simulate(dist, args.T, args.trials, np.random.default_rng(seed))
        t = Table("walk-simulate", ["checkpoint", "return_prob", "std_error"],
                  meta=_meta(args, {
                      "mean_visits": stats.mean_visits_to_origin,
                      "mean_distinct": stats.mean_distinct_sites,
                      "max_displacement": stats.max_displacement,
                  }))
        for cp in stats.checkpoints:
            t.add(cp.time, cp.return_probability, cp.std_error)
        return t
    if args.mode == "halfmass":
        val = halfmass_check(args.n, dist if args.dist != "cauchy" else None, args.radius)
        t = Table("walk-halfmass", ["n", "prob_within_3n", "bound", "ok"], meta=_meta(args))
        ok = val >= 0.5
        t.add(args.n, val, 0.5, ok)
        if not ok:
            raise ContractViolation(f"P(|S_n| <= 3n) = {val} < 0.5", t.rows[-1])
        return t
    pmf = convolve_pmf(dist, args.n, args.radius)
    p0 = pmf.prob(0)
    scaled = p0 * (6 * args.n + 1)
    amax = pmf.argmax()
    t = Table("walk-convolve",
              ["n", "p0", "p0_times_6n_plus_1", "argmax", "window_mass", "outside_mass", "audit"],
              meta=_meta(args))
    t.add(args.n, p0, scaled, amax, pmf.window_mass(), pmf.outside_mass(), pmf.value_error_bound)
    if args.n % 2 == 0 and (scaled < 0.5 or amax != 0):
        raise ContractViolation(f"even-step checkpoint failed: scaled={scaled}, argmax={amax}",
                                t.rows[-1])
    return t


def _run_conductance(args) -> Table:
    from .network import WeightedNetwork, effective_conductance

    with open(args.network, "r", encoding="utf-8") as fh:
        net = WeightedNetwork.from_text(fh.read())
    res = effective_conductance(net, _parse_points(args.source), _parse_points(args.sink))
    t = Table("conductance", ["c_eff", "resistance", "disconnected", "residual"], meta=_meta(args))
    t.add(res.value, (1.0 / res.value if res.value > 0 else float("inf")),
          res.disconnected, res.residual)
    return t


def _run_flow(args) -> Table:
    from .network import check_unit_flow, dyadic_box_flow

    res = dyadic_box_flow(args.d, args.s, args.K, args.kmax, args.materialize)
    chk = check_unit_flow(res.flow) if res.flow is not None else None
    cum = res.initial_energy
    t = Table("flow-stages",
              ["k", "a_k", "b_k", "box_size", "stage_energy", "ratio_to_prev", "cumulative"],
              meta=_meta(args, {
                  "initial_energy": res.initial_energy,
                  "unit_flow_ok": "n/a" if chk is None else chk.ok,
                  "materialized_stages": res.materialized_stages,
              }))
    prev = None
    for i, e in enumerate(res.stage_energies):
        k = args.K + i
        a, b = res.boxes[k]
        cum += e
        t.add(k, a, b, 2 ** (k * args.d), e, (e / prev if prev else float("nan")), cum)
        prev = e
    if chk is not None and not chk.ok:
        raise ContractViolation("; ".join(chk.violations))
    return t


def _run_loads(args) -> Table:
    from .lattice import ORIENTATIONS
    from .rewire import edge_loads

    if args.k < 1 or args.k > 6:
        raise CliError("loads tables support 1 <= k <= 6")
    lt = edge_loads(args.k)
    k = args.k
    t = Table("edge-loads", ["orientation", "level", "threshold", "count", "bound", "ok"],
              meta=_meta(args, {"max_load": lt.max_load()}))
    violation = None
    for o in ORIENTATIONS:
        for l in range(k):
            thr = 50 * 3 ** (2 * k + 2 * l)
            cnt = lt.tail_count(o, thr)
            bound = 3 ** (2 * k - l + 1)
            ok = cnt <= bound
            t.add(o.name, l, thr, cnt, bound, ok)
            if not ok and violation is None:
                violation = t.rows[-1]
        thr = 2**17 * 3 ** (4 * k)
        cnt = lt.tail_count(o, thr)
        ok = cnt == 0
        t.add(o.name, "sup", thr, cnt, 0, ok)
        if not ok and violation is None:
            violation = t.rows[-1]
    if violation is not None:
        raise ContractViolation("an edge-load bound failed", violation)
    return t


def _run_rewire(args) -> Table | str:
    from .lattice import Edge, ORIENTATIONS
    from .rewire import (LoadModel, ShiftWeightSampler, Window, cauchy_tail_estimate,
                         conductivity_comparison, rewired_weights)

    seed = _seed(args)
    if args.kmax is None:
        args.kmax = 6 if args.task == "tail" else 2
    if args.task == "tail":
        pts = _parse_points(args.edge)
        if len(pts) != 2:
            raise CliError("--edge needs exactly two endpoints")
        edge = Edge(*pts)
        sampler = ShiftWeightSampler(edge, args.kmax)
        rng = np.random.default_rng(seed)
        samples = sampler.sample(args.samples, rng)
        thresholds = [500.0 * 3.0**j for j in range(7)]
        est = cauchy_tail_estimate(samples, thresholds)
        t = Table("rewire-tail", ["j", "threshold", "tail_prob", "scaled_tail"],
                  meta=_meta(args, {"fitted_constant": est.fitted_constant}))
        for j, (thr, pr, sc) in enumerate(zip(est.thresholds, est.tail_probs, est.scaled_tails())):
            t.add(j, thr, pr, 3.0**j * pr)
        return t
    if args.task == "compare":
        models = {k: LoadModel(k) for k in range(1, args.kmax + 1)}
        t = Table("rewire-compare",
                  ["realization", "rewired_c_eff", "long_range_c_eff", "ratio", "dominates"],
                  meta=_meta(args))
        lr = None
        violation = None
        for i in range(args.realizations):
            rng = np.random.default_rng(seed + i)
            rep = conductivity_comparison(args.core, args.kmax, rng=rng, models=models,
                                          long_range_value=lr)
            lr = rep.long_range_value
            t.add(i, rep.rewired_value, rep.long_range_value, rep.ratio, rep.dominates)
            if not rep.dominates and violation is None:
                violation = t.rows[-1]
        if violation is not None:
            raise ContractViolation("rewired conductivity fell below the long-range network",
                                    violation)
        return t
    field = rewired_weights(Window.centered(args.radius), args.kmax,
                            rng=np.random.default_rng(seed))
    t = Table("rewire-field", ["anchor_x", "anchor_y", "orientation", "weight"],
              meta=_meta(args, {
                  "shifts": ";".join(f"{k}:{r[0]},{r[1]}" for k, r in sorted(field.shifts.items())),
              }))
    for e in field.window.short_edges():
        a = e.anchor
        t.add(a[0], a[1], e.orientation.name, field.value(e))
    return t


def _run_rcm(args) -> Table | str:
    from .rcm import (Kernel, RcmSample, components_and_walk, discretize,
                      effective_decay_exponent, sample_rcm, tail_certificate)

    kern = Kernel(args.kernel, args.gamma, args.beta)
    seed = _seed(args)
    if args.task == "sample":
        return sample_rcm(args.L, kern, args.delta, seed).to_text()
    if args.task == "tail":
        r_list = [float(2**j) for j in range(1, 20) if 2**j <= args.rmax]
        cert = tail_certificate(kern, args.delta, r_list=r_list, workers=args.threads)
        t = Table("rcm-tail", ["r", "r4_P", "rel_error"],
                  meta=_meta(args, {"slope": cert.slope, "bounded": cert.bounded}))
        for r, v, e in zip(cert.r_values, cert.scaled, cert.errors):
            t.add(r, v, e)
        if args.expect == "bounded" and not cert.bounded:
            raise ContractViolation(f"slope {cert.slope} exceeds the bounded-trend tolerance")
        if args.expect == "diverging" and cert.slope < 0.5:
            raise ContractViolation(f"slope {cert.slope} below the diverging threshold")
        return t
    if args.task == "delta-eff":
        r_list = [float(4**j) for j in range(1, 6)]
        est = effective_decay_exponent(kern, args.delta, r_list)
        t = Table("rcm-delta-eff", ["r", "estimate"],
                  meta=_meta(args, {"below_two": est.below_two, "regime": est.regime_label}))
        for r, v in zip(est.r_values, est.estimates):
            t.add(r, v)
        return t
    # discretize / walk need a sample
    if args.sample_file:
        with open(args.sample_file, "r", encoding="utf-8") as fh:
            sample = RcmSample.from_text(fh.read())
    else:
        sample = sample_rcm(args.L, kern, args.delta, seed)
    disc = discretize(sample)
    if args.task == "discretize":
        t = Table("rcm-discretize",
                  ["occupied_cells", "isolated_cells", "input_edges", "dropped_internal",
                   "network_edges", "total_weight"],
                  meta=_meta(args))
        t.add(disc.occupied_cells, disc.isolated_cells, disc.input_edges,
              disc.dropped_internal, disc.network.edge_count, float(disc.network.edge_c.sum()))
        return t
    rep = components_and_walk(disc.network, args.T, np.random.default_rng(seed + 1))
    t = Table("rcm-walk",
              ["component_rank", "component_size", "walked", "visits_to_start", "distinct"],
              meta=_meta(args))
    for i, size in enumerate(rep.component_sizes[:10]):
        walked = size == rep.walked_component_size and i == rep.component_sizes.index(rep.walked_component_size)
        t.add(i, size, walked,
              rep.walk_stats.visits_to_start if walked else "",
              rep.walk_stats.distinct_vertices if walked else "")
    return t


def _random_network(rng, n_vertices: int, n_edges: int):
    from .network import WeightedNetwork

    edges = []
    seen = set()
    # a spanning backbone keeps source and sink connected
    for v in range(1, n_vertices):
        u = int(rng.integers(0, v))
        edges.append((u, v, float(rng.uniform(0.2, 2.0))))
        seen.add((u, v))
    while len(edges) < n_edges:
        u, v = sorted(rng.integers(0, n_vertices, size=2).tolist())
        if u == v or (u, v) in seen:
            continue
        seen.add((u, v))
        edges.append((u, v, float(rng.uniform(0.2, 2.0))))
    return WeightedNetwork(list(range(n_vertices)), edges)


def _run_domination(args) -> Table:
    from .network import domination_enumeration, domination_test

    seed = _seed(args)
    rng = np.random.default_rng(seed)
    t = Table("domination",
              ["network", "baseline", "estimate", "std_error", "exact", "dominated"],
              meta=_meta(args))
    violation = None
    for i in range(args.networks):
        n_edges = int(rng.integers(max(args.vertices - 1, 2), args.max_edges + 1))
        net = _random_network(rng, args.vertices, max(n_edges, args.vertices - 1))
        A, B = [0], [args.vertices - 1]
        if args.mode == "exact":
            probs = rng.uniform(0.25, 0.75, size=net.edge_count)
            outcomes = [[(float(c / p), float(p)), (0.0, float(1.0 - p))]
                        for c, p in zip(net.edge_c, probs)]
            rep = domination_enumeration(net, outcomes, A, B)
        else:
            probs = rng.uniform(0.25, 0.75, size=net.edge_count)
            base_c = net.edge_c.copy()

            def sampler(r, p=probs, c=base_c):
                return np.where(r.random(len(c)) < p, c / p, 0.0)

            rep = domination_test(net, sampler, A, B, args.trials, rng)
        t.add(i, rep.baseline, rep.estimate, rep.std_error, rep.exact, rep.dominated)
        if not rep.dominated and violation is None:
            violation = t.rows[-1]
    if violation is not None:
        raise ContractViolation("conductance domination failed", violation)
    return t


_RUNNERS = {
    "walk": _run_walk,
    "conductance": _run_conductance,
    "flow": _run_flow,
    "loads": _run_loads,
    "rewire": _run_rewire,
    "rcm": _run_rcm,
    "domination": _run_domination,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "config", None):
            defaults = _load_config_defaults(args.config)
            known = {a.dest for a in parser._subparsers._group_actions[0]
                     .choices[args.command]._actions}
            unknown = set(defaults) - known
            if unknown:
                raise CliError(f"unknown config keys: {sorted(unknown)}")
            # flags given explicitly override the file: reparse with new defaults
            sub = parser._subparsers._group_actions[0].choices[args.command]
            typed = {}
            for a in sub._actions:
                if a.dest in defaults:
                    raw = defaults[a.dest]
                    typed[a.dest] = a.type(raw) if a.type else raw
            sub.set_defaults(**typed)
            args = parser.parse_args(argv)
        out = _RUNNERS[args.command](args)
        text = out if isinstance(out, str) else write_table(out, args.format)
        _emit(args, text)
        return EXIT_OK
    except CliError as e:
        print(f"rwlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as e:
        print(f"rwlab: contract violation: {e}", file=sys.stderr)
        if e.row is not None:
            print(f"rwlab: violating row: {e.row}", file=sys.stderr)
        return EXIT_CONTRACT
    except (OSError, ValueError) as e:
        print(f"rwlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
