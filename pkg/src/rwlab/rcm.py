"""Two-dimensional weight-dependent random connection model.

Vertices form a unit-intensity Poisson process on a square window, each with a
uniform weight parameter in (0, 1); points at Euclidean distance r connect
independently with probability rho(g(s, t) r^2) for a kernel g and a
non-increasing profile rho with r^delta rho(r) -> 1.

Connection-probability integrals are evaluated by reducing the (s, t) square
to one dimension through the kernel's sub-level areas A(u) = |{g <= u}|: the
profile min(1, z^{-delta}) splits the square into a saturated region of area
A(r^{-2}) plus a tail integral handled by parts, which stays accurate down to
probabilities around 1e-14 where raw 2-d quadrature loses all digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .network import WeightedNetwork

KERNEL_KINDS = ("sum", "min", "prod", "pa")


@dataclass(frozen=True)
class Kernel:
    """Symmetric weight-mixing kernel on (0,1)^2, non-decreasing in both arguments."""

    kind: str
    gamma: float
    beta: float = 1.0

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("gamma must lie in [0, 1)")
        if self.beta <= 0:
            raise ValueError("beta must be positive")

    def __call__(self, s, t):
        s = np.asarray(s, dtype=np.float64)
        t = np.asarray(t, dtype=np.float64)
        if np.any((s <= 0) | (s >= 1) | (t <= 0) | (t >= 1)):
            raise ValueError("kernel arguments must lie in the open interval (0, 1)")
        g, b = self.gamma, self.beta
        if self.kind == "sum":
            # d = 2 in the exponents
            return (s ** (-g / 2) + t ** (-g / 2)) ** (-2.0) / b
        if self.kind == "min":
            return np.minimum(s, t) ** g / b
        if self.kind == "prod":
            return (s * t) ** g / b
        lo = np.minimum(s, t)
        hi = np.maximum(s, t)
        return lo**g * hi ** (1.0 - g) / b

    @property
    def max_value(self) -> float:
        return 1.0 / self.beta

    def sublevel_area(self, u: float) -> float:
        """A(u) = area of {(s, t) in (0,1)^2 : g(s, t) <= u}, exact per kind.

        gamma = 0 kernels are degenerate: g is constant 1/beta, so A jumps
        from 0 to 1 there.
        """
        if u <= 0:
            return 0.0
        if u >= self.max_value:
            return 1.0
        g = self.gamma
        m = self.beta * u
        if g == 0.0:
            return 0.0  # constant kernel below its value
        if self.kind == "min":
            # min(s,t) <= m^{1/g}; w(2 - w) avoids cancellation at tiny w
            w = min(1.0, m ** (1.0 / g))
            return w * (2.0 - w)
        if self.kind == "prod":
            # st <= w = m^{1/g}; area under the hyperbola in the unit square
            w = m ** (1.0 / g)
            if w >= 1.0:
                return 1.0
            return w - w * math.log(w)
        if self.kind == "pa":
            # twice the area of {s <= t, s^g t^{1-g} <= m}: the section in s is
            # min(t, (m / t^{1-g})^{1/g}), and the two branches meet at t = m
            if m >= 1.0:
                return 1.0
            if g == 0.5:
                return m * m - 2.0 * m * m * math.log(m)
            w = m ** (1.0 / g)
            return m * m + (2.0 * g / (2.0 * g - 1.0)) * (w - m * m)
        # sum kernel: s^{-g/2} + t^{-g/2} >= M = m^{-1/2}.  The t-section is 1
        # below t* = (M-1)^{-2/g} and (M - t^{-g/2})^{-2/g} above; substituting
        # y = t^{-g/2} keeps M - y >= 1 on the whole range, so no cancellation
        M = m ** (-0.5)
        if M <= 2.0:
            return 1.0
        tstar = (M - 1.0) ** (-2.0 / g)

        def transformed(y: float) -> float:
            return (M - y) ** (-2.0 / g) * y ** (-2.0 / g - 1.0)

        val, _ = integrate.quad(transformed, 1.0, M - 1.0, limit=200, epsrel=1e-12,
                                epsabs=1e-300)
        return tstar + (2.0 / g) * val


def kernel_eval(kernel: Kernel, s: float, t: float) -> float:
    return float(kernel(s, t))


def profile(r, delta: float):
    """Concrete profile rho(r) = min(1, r^{-delta}): non-increasing, r^delta rho -> 1."""
    if delta <= 1.0:
        raise ValueError("delta must exceed 1")
    arr = np.atleast_1d(np.asarray(r, dtype=np.float64))
    out = np.ones_like(arr)
    mask = arr > 1.0
    out[mask] = arr[mask] ** (-delta)
    if np.ndim(r) == 0:
        return float(out[0])
    return out


# -- sampling ------------------------------------------------------------------


@dataclass
class RcmSample:
    """One realization: weighted points in [0, L]^2 plus sampled edges."""

    L: float
    kernel: Kernel
    delta: float
    seed: int
    positions: np.ndarray       # (n, 2) float
    weights: np.ndarray         # (n,) float in (0, 1)
    edges: np.ndarray           # (m, 2) int indices

    def to_text(self) -> str:
        lines = [
            "rcm-sample",
            f"L {self.L!r}",
            f"kernel {self.kernel.kind}",
            f"gamma {self.kernel.gamma!r}",
            f"beta {self.kernel.beta!r}",
            f"delta {self.delta!r}",
            f"seed {self.seed}",
            f"points {len(self.weights)}",
        ]
        for (x, y), w in zip(self.positions, self.weights):
            lines.append(f"p {float(x)!r} {float(y)!r} {float(w)!r}")
        lines.append(f"edges {len(self.edges)}")
        for i, j in self.edges:
            lines.append(f"e {i} {j}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RcmSample":
        it = iter(text.splitlines())
        if next(it).strip() != "rcm-sample":
            raise ValueError("not an rcm-sample file")
        header: dict[str, str] = {}
        pts = []
        wts = []
        edges = []
        for line in it:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "p":
                pts.append((float(parts[1]), float(parts[2])))
                wts.append(float(parts[3]))
            elif parts[0] == "e":
                edges.append((int(parts[1]), int(parts[2])))
            else:
                header[parts[0]] = parts[1]
        kern = Kernel(header["kernel"], float(header["gamma"]), float(header["beta"]))
        return cls(
            L=float(header["L"]),
            kernel=kern,
            delta=float(header["delta"]),
            seed=int(header["seed"]),
            positions=np.asarray(pts, dtype=np.float64).reshape(-1, 2),
            weights=np.asarray(wts, dtype=np.float64),
            edges=np.asarray(edges, dtype=np.int64).reshape(-1, 2),
        )

    @classmethod
    def regenerate(cls, L: float, kernel: Kernel, delta: float, seed: int) -> "RcmSample":
        return sample_rcm(L, kernel, delta, seed)


def sample_rcm(L: float, kernel: Kernel, delta: float, seed: int) -> RcmSample:
    """Poisson(L^2) uniform points with uniform weights; edges independent with
    probability rho(g(s,t) ||x-y||^2), Euclidean distance.

    Regenerating with the same header (L, kernel, delta, seed) reproduces the
    sample bit-exactly.
    """
    if L <= 0:
        raise ValueError("window side must be positive")
    rng = np.random.default_rng(seed)
    n = int(rng.poisson(L * L))
    pos = rng.uniform(0.0, L, size=(n, 2))
    wts = rng.uniform(0.0, 1.0, size=n)
    edges = []
    if n > 1:
        gvals = kernel(wts[:, None].clip(1e-300, 1 - 1e-16), wts[None, :].clip(1e-300, 1 - 1e-16))
        d2 = ((pos[:, None, :] - pos[None, :, :]) ** 2).sum(axis=2)
        p = profile(gvals * d2, delta)
        draws = rng.random(size=(n, n))
        iu = np.triu_indices(n, k=1)
        hit = draws[iu] < p[iu]
        edges = np.stack([iu[0][hit], iu[1][hit]], axis=1)
    return RcmSample(L, kernel, delta, seed,
                     pos, wts, np.asarray(edges, dtype=np.int64).reshape(-1, 2))


# -- connection-probability integrals -------------------------------------------


@dataclass
class IntegralValue:
    value: float
    error: float


def connection_probability(kernel: Kernel, delta: float, r: float) -> IntegralValue:
    """P(r) = E[rho(g(S,T) r^2)] for independent uniform S, T.

    Layer-cake form: P = A(eps) + r^{-2 delta} * E[g^{-delta}; g > eps] with
    eps = r^{-2}, the conditional moment integrated by parts against the
    sub-level area A.  The quadrature runs in log coordinates, so endpoint
    blowup at small kernel values is tame.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    if delta <= 1.0:
        raise ValueError("delta must exceed 1")
    if kernel.gamma == 0.0:
        # degenerate kernel: g is the constant 1/beta
        val = profile(r * r / kernel.beta, delta)
        return IntegralValue(float(val), 1e-16 * float(val))
    eps = r ** (-2.0)
    gmax = kernel.max_value
    A_eps = kernel.sublevel_area(eps)
    if eps >= gmax:
        return IntegralValue(1.0, 0.0)

    def integrand(w: float) -> float:
        u = math.exp(w)
        return math.exp(-delta * w) * kernel.sublevel_area(u)

    # log-spaced panels: each spans a few e-folds, so the huge dynamic range
    # of the full integral never meets the quadrature's extrapolation
    panel_rtol = 1e-10
    lo, hi = math.log(eps), math.log(gmax)
    n_panels = max(1, int(math.ceil((hi - lo) / 3.0)))
    cuts = np.linspace(lo, hi, n_panels + 1)
    tail_int = 0.0
    tail_err = 0.0
    for a, b in zip(cuts, cuts[1:]):
        v, e = integrate.quad(integrand, a, b, limit=200, epsabs=1e-300, epsrel=panel_rtol)
        tail_int += v
        tail_err += e
    moment = gmax ** (-delta) - eps ** (-delta) * A_eps + delta * tail_int
    value = A_eps + r ** (-2.0 * delta) * moment
    error = r ** (-2.0 * delta) * delta * tail_err + 1e-15 * value
    return IntegralValue(float(value), float(error))


def connection_probability_quadrature(kernel: Kernel, delta: float, r: float) -> IntegralValue:
    """Direct 2-d quadrature of rho(g(s,t) r^2); cross-check for the layer-cake path."""
    u_sat = r ** (-2.0)

    def inner(s: float) -> float:
        # split at the profile saturation boundary and at the min/max ridge t = s
        t_kink = _section_sup(kernel, s, u_sat)  # kernels are symmetric
        pts = sorted({p for p in (t_kink, s) if 0.0 < p < 1.0})
        v, _ = integrate.quad(lambda t: profile(float(kernel(s, t)) * r * r, delta),
                              0.0, 1.0, limit=200, points=pts or None)
        return v

    # below s* every t-section is fully saturated: a spike the outer
    # subdivision must be told about
    s_star = _section_sup(kernel, 1.0 - 1e-15, u_sat)
    outer_pts = [s_star] if 0.0 < s_star < 1.0 else None
    val, err = integrate.quad(inner, 0.0, 1.0, limit=200, points=outer_pts)
    return IntegralValue(float(val), float(err))


@dataclass
class TailCertificate:
    r_values: list[float]
    scaled: list[float]            # r^4 * P(r)
    errors: list[float]            # integration error estimates, relative
    slope: float                   # log-log least squares over the upper half
    sup_value: float

    @property
    def bounded(self) -> bool:
        return self.slope <= 0.05


def tail_certificate(kernel: Kernel, delta: float, gamma: float | None = None,
                     r_list: list[float] | None = None, workers: int = 1) -> TailCertificate:
    """Table of r^4 P(r) with a trend fit.

    The boundedness trend is the least-squares log-log slope over the upper
    half of the r ladder: the lower decades still carry the saturated-profile
    transient, which says nothing about the large-r trend the certificate is
    after.  Per-r integrals are independent; ``workers`` caps a thread pool.
    """
    if r_list is None:
        r_list = [float(2**j) for j in range(1, 11)]
    if gamma is not None and gamma != kernel.gamma:
        raise ValueError("gamma disagrees with the kernel")
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(lambda r: connection_probability(kernel, delta, r), r_list))
    else:
        results = [connection_probability(kernel, delta, r) for r in r_list]
    scaled = []
    errors = []
    for r, res in zip(r_list, results):
        scaled.append(r**4 * res.value)
        errors.append(res.error / res.value if res.value > 0 else 0.0)
    upper = slice(len(r_list) // 2, None)
    logs_r = np.log(np.asarray(r_list[upper]))
    logs_v = np.log(np.asarray(scaled[upper]))
    slope = float(np.polyfit(logs_r, logs_v, 1)[0])
    return TailCertificate(list(r_list), scaled, errors, slope, max(scaled))


def pa_small_value_tail(gamma: float, eps_list: list[float], beta: float = 1.0) -> list[tuple[float, float]]:
    """(eps, P(g_pa <= eps) / eps^2) rows; bounded ratios need gamma < 1/2."""
    kern = Kernel("pa", gamma, beta)
    return [(e, kern.sublevel_area(e) / (e * e)) for e in eps_list]


@dataclass
class MomentTable:
    eta: float
    mc_estimate: float
    mc_std_error: float
    quad_estimate: float
    conditional_rows: list[tuple[float, float, float, float]]  # (eps, scaled quad, scaled MC, MC se)


def small_eps_moments(sampler, eta: float, eps_list: list[float], trials: int,
                      rng: np.random.Generator,
                      quad_density=None) -> MomentTable:
    """Negative moments of a small-values-controlled variable, MC vs quadrature.

    For eta < 1 the full moment E[X^-eta] is reported; for eta > 1 rows of
    eps^{eta-1} E[X^-eta | X >= eps] are reported (bounded as eps -> 0).
    ``sampler(rng, n)`` draws; ``quad_density(x)`` is an optional density for
    the quadrature route (uniform by default).
    """
    if eta <= 0 or eta == 1.0:
        raise ValueError("eta must be positive and different from 1")
    x = np.asarray(sampler(rng, trials), dtype=np.float64)
    if (x < 0).any():
        raise ValueError("sampler produced negative values")
    dens = (lambda u: 1.0) if quad_density is None else quad_density

    if eta < 1.0:
        vals = x ** (-eta)
        mc = float(vals.mean())
        se = float(vals.std(ddof=1) / math.sqrt(trials))
        q, _ = integrate.quad(lambda u: u ** (-eta) * dens(u), 0.0, 1.0, limit=200)
        return MomentTable(eta, mc, se, float(q), [])

    rows = []
    for eps in eps_list:
        qnum, _ = integrate.quad(lambda u: u ** (-eta) * dens(u), eps, 1.0, limit=200)
        qden, _ = integrate.quad(dens, eps, 1.0, limit=200)
        q = eps ** (eta - 1.0) * qnum / qden
        sel = x >= eps
        if sel.any():
            vals = eps ** (eta - 1.0) * x[sel] ** (-eta)
            mc = float(vals.mean())
            se = float(vals.std(ddof=1) / math.sqrt(sel.sum())) if sel.sum() > 1 else math.inf
        else:
            mc, se = math.nan, math.inf
        rows.append((eps, float(q), mc, se))
    return MomentTable(eta, math.nan, math.nan, math.nan, rows)


@dataclass
class DecayExponentEstimate:
    r_values: list[float]
    estimates: list[float]
    below_two: bool
    regime_label: str


def effective_decay_exponent(kernel: Kernel, delta: float, r_list: list[float],
                             cutoff: bool = True) -> DecayExponentEstimate:
    """Finite-r estimates -log I(r) / log(r^2) of the effective decay exponent.

    I(r) integrates rho(g(s,t) r^2) over (s,t) in (c, 1)^2 with c = r^{-2}
    (``cutoff=True``, the defining form) or over the whole unit square
    (``cutoff=False``, which makes the gamma = 0 case exactly delta at every
    finite r).  Estimates below 2 indicate the transient-side regime; the
    regime label uses the threshold gamma > (delta-1)/delta.
    """
    ests = []
    for r in r_list:
        c = r ** (-2.0) if cutoff else 0.0
        val = _cut_square_integral(kernel, delta, r, c)
        ests.append(-math.log(val) / math.log(r * r))
    thr = (delta - 1.0) / delta
    label = "transient-side" if (delta < 2.0 or kernel.gamma > thr) else "recurrent-side"
    return DecayExponentEstimate(list(r_list), ests, ests[-1] < 2.0, label)


def _section_sup(kernel: Kernel, t: float, u: float) -> float:
    """sup{s in (0,1): g(s,t) <= u} by bisection (g is nondecreasing in s)."""
    if float(kernel(1.0 - 1e-15, t)) <= u:
        return 1.0
    if float(kernel(1e-15, t)) > u:
        return 0.0
    lo, hi = 1e-15, 1.0 - 1e-15
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if float(kernel(mid, t)) <= u:
            lo = mid
        else:
            hi = mid
    return lo


def _cut_square_integral(kernel: Kernel, delta: float, r: float, c: float) -> float:
    """Integral of rho(g r^2) over (c, 1)^2 via sections in t."""
    if kernel.gamma == 0.0:
        return float(profile(r * r / kernel.beta, delta)) * (1.0 - c) ** 2
    u_sat = r ** (-2.0)  # profile saturates where g <= r^{-2}

    def inner(t: float) -> float:
        s_kink = _section_sup(kernel, t, u_sat)
        pts = [s_kink] if c < s_kink < 1.0 else None
        v, _ = integrate.quad(
            lambda s: float(profile(float(kernel(s, t)) * r * r, delta)),
            c, 1.0, limit=200, epsabs=1e-300, epsrel=1e-10, points=pts)
        return v

    val, _ = integrate.quad(inner, c, 1.0, limit=200, epsabs=1e-300, epsrel=1e-9)
    return val


# -- discretization ---------------------------------------------------------------


@dataclass
class DiscretizedSample:
    network: WeightedNetwork
    occupied_cells: int
    isolated_cells: int
    input_edges: int
    dropped_internal: int


def discretize(sample: RcmSample) -> DiscretizedSample:
    """Collapse points to their unit cells; parallel inter-cell edges sum to
    integer conductances and intra-cell edges vanish."""
    cells = np.floor(sample.positions).astype(np.int64)
    labels = [tuple(c) for c in cells]
    weights: dict[tuple, int] = {}
    dropped = 0
    for i, j in sample.edges:
        u, v = labels[int(i)], labels[int(j)]
        if u == v:
            dropped += 1
            continue
        key = (u, v) if u <= v else (v, u)
        weights[key] = weights.get(key, 0) + 1
    occupied = sorted(set(labels))
    net = WeightedNetwork(occupied, [(u, v, float(c)) for (u, v), c in weights.items()])
    isolated = len(net.isolated_vertices())
    return DiscretizedSample(net, len(occupied), isolated, len(sample.edges), dropped)


@dataclass
class ComponentWalkReport:
    component_sizes: list[int]
    walked_component_size: int
    walk_stats: object


def components_and_walk(net: WeightedNetwork, T: int, rng: np.random.Generator,
                        center: tuple[float, float] | None = None) -> ComponentWalkReport:
    """Connected components plus a walk inside the component nearest the center."""
    from .network import walk_on_network

    comps = net.components()
    sizes = sorted((len(c) for c in comps), reverse=True)
    if center is None:
        pts = [v for v in net.vertices if isinstance(v, tuple)]
        if pts:
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            center = (cx, cy)
        else:
            center = (0.0, 0.0)
    best = None
    best_d = math.inf
    for v in net.vertices:
        if isinstance(v, tuple):
            d = (v[0] - center[0]) ** 2 + (v[1] - center[1]) ** 2
            if d < best_d:
                best, best_d = v, d
    comp = next(c for c in comps if best in c)
    stats = walk_on_network(net, best, T, rng)
    return ComponentWalkReport(sizes, len(comp), stats)
