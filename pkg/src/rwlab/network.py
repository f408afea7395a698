"""Finite weighted electric networks.

Effective conductance between vertex sets is computed variationally: the two
sets are contracted, the harmonic potential (1 on A, 0 on B) is solved on the
interior, and the value is the Dirichlet energy of that potential.  Unit flows
give the dual Thomson bound: energy(theta) >= 1/C_eff for every unit flow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Hashable, Iterable, Sequence

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

Vertex = Hashable

DENSE_SOLVE_LIMIT = 2000
CG_RTOL = 1e-12


class SolverError(RuntimeError):
    """Raised when the harmonic solve does not converge; carries the residual."""


class WeightedNetwork:
    """Finite vertex set with nonnegative edge conductances.

    Zero-conductance edges are kept in the edge list (percolation samples use
    them) but never enter neighbor structures or solves.  Instances are
    treated as immutable after construction.
    """

    def __init__(self, vertices: Sequence[Vertex], edges: Iterable[tuple[Vertex, Vertex, float]],
                 positions: dict[Vertex, tuple] | None = None):
        self.vertices = list(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        ei = []
        ej = []
        ec = []
        for u, v, c in edges:
            if c < 0:
                raise ValueError(f"negative conductance on edge ({u}, {v})")
            if u == v:
                continue  # self-loops carry no current
            ei.append(self.index[u])
            ej.append(self.index[v])
            ec.append(float(c))
        self.edge_i = np.asarray(ei, dtype=np.int64)
        self.edge_j = np.asarray(ej, dtype=np.int64)
        self.edge_c = np.asarray(ec, dtype=np.float64)
        self.positions = dict(positions) if positions else None

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Vertex, Vertex, float]],
                   vertices: Sequence[Vertex] | None = None,
                   positions: dict[Vertex, tuple] | None = None) -> "WeightedNetwork":
        edges = list(edges)
        if vertices is None:
            seen: dict[Vertex, None] = {}
            for u, v, _ in edges:
                seen.setdefault(u)
                seen.setdefault(v)
            vertices = list(seen)
        return cls(vertices, edges, positions)

    # -- basic structure ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edge_c)

    def edges(self) -> Iterable[tuple[Vertex, Vertex, float]]:
        for i, j, c in zip(self.edge_i, self.edge_j, self.edge_c):
            yield self.vertices[i], self.vertices[j], float(c)

    def vertex_strength(self, v: Vertex) -> float:
        """Total conductance incident to v."""
        i = self.index[v]
        return float(self.edge_c[self.edge_i == i].sum() + self.edge_c[self.edge_j == i].sum())

    def isolated_vertices(self) -> list[Vertex]:
        deg = np.zeros(len(self.vertices))
        np.add.at(deg, self.edge_i, self.edge_c)
        np.add.at(deg, self.edge_j, self.edge_c)
        return [v for v, d in zip(self.vertices, deg) if d == 0.0]

    def neighbor_lists(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        """Positive-conductance adjacency: per-vertex neighbor indices and weights."""
        nbr: list[list[int]] = [[] for _ in self.vertices]
        wts: list[list[float]] = [[] for _ in self.vertices]
        for i, j, c in zip(self.edge_i, self.edge_j, self.edge_c):
            if c > 0:
                nbr[i].append(j)
                wts[i].append(c)
                nbr[j].append(i)
                wts[j].append(c)
        return ([np.asarray(a, dtype=np.int64) for a in nbr],
                [np.asarray(w, dtype=np.float64) for w in wts])

    def components(self) -> list[set[Vertex]]:
        """Connected components of the positive-conductance graph."""
        parent = list(range(len(self.vertices)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j, c in zip(self.edge_i, self.edge_j, self.edge_c):
            if c > 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
        groups: dict[int, set[Vertex]] = {}
        for i, v in enumerate(self.vertices):
            groups.setdefault(find(i), set()).add(v)
        return list(groups.values())

    def with_edge_weights(self, new_c: np.ndarray) -> "WeightedNetwork":
        """Copy of the network with the same edge list and new conductances."""
        out = WeightedNetwork.__new__(WeightedNetwork)
        out.vertices = self.vertices
        out.index = self.index
        out.edge_i = self.edge_i
        out.edge_j = self.edge_j
        out.edge_c = np.asarray(new_c, dtype=np.float64)
        if (out.edge_c < 0).any():
            raise ValueError("negative conductance")
        out.positions = self.positions
        return out

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        """Line-oriented format: header with counts, optional positions, `edge u v c` lines.

        Conductances round-trip bit-exactly: integers stay integers and floats
        are written with repr (shortest exact representation).
        """
        lines = [f"network {len(self.vertices)} {self.edge_count}"]
        for v in self.vertices:
            lines.append(f"vertex {_label_str(v)}")
        if self.positions:
            lines.append(f"positions {len(self.positions)}")
            for v, pos in self.positions.items():
                lines.append(f"pos {_label_str(v)} " + " ".join(repr(float(p)) for p in pos))
        for u, v, c in self.edges():
            lines.append(f"edge {_label_str(u)} {_label_str(v)} {_num_str(c)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "WeightedNetwork":
        vertices: list[Vertex] = []
        edges: list[tuple[Vertex, Vertex, float]] = []
        positions: dict[Vertex, tuple] = {}
        header = None
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "network":
                header = (int(parts[1]), int(parts[2]))
            elif parts[0] == "vertex":
                vertices.append(_label_parse(parts[1]))
            elif parts[0] == "pos":
                positions[_label_parse(parts[1])] = tuple(float(p) for p in parts[2:])
            elif parts[0] == "edge":
                edges.append((_label_parse(parts[1]), _label_parse(parts[2]), float(parts[3])))
            elif parts[0] == "positions":
                continue
            else:
                raise ValueError(f"unrecognized line: {line!r}")
        if header is None:
            raise ValueError("missing network header")
        if header[0] != len(vertices) or header[1] != len(edges):
            raise ValueError("header counts disagree with the body")
        return cls(vertices, edges, positions or None)


def _label_str(v: Vertex) -> str:
    if isinstance(v, tuple):
        return ",".join(str(c) for c in v)
    return str(v)


def _label_parse(s: str):
    if "," in s:
        return tuple(int(c) for c in s.split(","))
    try:
        return int(s)
    except ValueError:
        return s


def _num_str(c: float) -> str:
    if c == int(c) and abs(c) < 2**53:
        return str(int(c))
    return repr(c)


# -- harmonic solves -------------------------------------------------------


@dataclass
class ConductanceResult:
    value: float
    potential: dict[Vertex, float]
    disconnected: bool = False
    residual: float = 0.0


def effective_conductance(net: WeightedNetwork, A: Iterable[Vertex], B: Iterable[Vertex]) -> ConductanceResult:
    """C_eff(A <-> B): Dirichlet energy of the harmonic potential (1 on A, 0 on B).

    A and B are contracted; the interior Laplacian is solved densely below
    DENSE_SOLVE_LIMIT interior vertices and by diagonally preconditioned CG
    above it.  If A and B are not joined by positive conductances the value
    is 0 and the result is flagged disconnected.
    """
    A = set(A)
    B = set(B)
    if not A or not B:
        raise ValueError("A and B must be nonempty")
    if A & B:
        raise ValueError("A and B must be disjoint")
    missing = (A | B) - set(net.index)
    if missing:
        raise ValueError(f"vertices not in the network: {sorted(map(str, missing))[:3]}")

    ia = {net.index[v] for v in A}
    ib = {net.index[v] for v in B}

    comp_ids = _component_ids(net)
    if not any(comp_ids[i] in {comp_ids[j] for j in ib} for i in ia):
        pot = {v: (1.0 if v in A else 0.0) for v in net.vertices}
        return ConductanceResult(0.0, pot, disconnected=True)

    n = len(net.vertices)
    role = np.zeros(n, dtype=np.int8)  # 0 interior, 1 source, 2 sink
    for i in ia:
        role[i] = 1
    for i in ib:
        role[i] = 2

    mask = net.edge_c > 0
    ei, ej, ec = net.edge_i[mask], net.edge_j[mask], net.edge_c[mask]

    # interior vertices in components touching neither A nor B carry no
    # current; dropping them keeps the Laplacian nonsingular
    live = {comp_ids[i] for i in ia} | {comp_ids[i] for i in ib}
    role[(role == 0) & ~np.isin(comp_ids, list(live))] = 3
    interior = np.flatnonzero(role == 0)
    int_pos = -np.ones(n, dtype=np.int64)
    int_pos[interior] = np.arange(len(interior))

    m = len(interior)
    diag = np.zeros(m)
    rhs = np.zeros(m)
    rows = []
    cols = []
    vals = []
    for i, j, c in zip(ei, ej, ec):
        ri, rj = role[i], role[j]
        if ri == 0:
            diag[int_pos[i]] += c
            if rj == 0:
                rows.append(int_pos[i])
                cols.append(int_pos[j])
                vals.append(-c)
            elif rj == 1:
                rhs[int_pos[i]] += c
        if rj == 0:
            diag[int_pos[j]] += c
            if ri == 0:
                rows.append(int_pos[j])
                cols.append(int_pos[i])
                vals.append(-c)
            elif ri == 1:
                rhs[int_pos[j]] += c

    if m == 0:
        f = np.zeros(0)
        residual = 0.0
    else:
        L = sp.coo_matrix((vals + list(diag), (rows + list(range(m)), cols + list(range(m)))),
                          shape=(m, m)).tocsr()
        if m < DENSE_SOLVE_LIMIT:
            f = np.linalg.solve(L.toarray(), rhs)
        else:
            dinv = 1.0 / L.diagonal()
            M = spla.LinearOperator((m, m), matvec=lambda x: dinv * x)
            f, info = spla.cg(L, rhs, rtol=CG_RTOL, atol=0.0, maxiter=20 * m, M=M)
            if info != 0:
                res = float(np.linalg.norm(L @ f - rhs) / max(np.linalg.norm(rhs), 1e-300))
                raise SolverError(f"conjugate gradient did not converge (info={info}, relative residual={res:.3e})")
        residual = float(np.linalg.norm(L @ f - rhs) / max(np.linalg.norm(rhs), 1e-300)) if m else 0.0

    full = np.zeros(n)
    full[role == 1] = 1.0
    full[interior] = f
    potential = {v: float(full[i]) for i, v in enumerate(net.vertices)}

    df = full[ei] - full[ej]
    value = float((ec * df * df).sum())
    return ConductanceResult(value, potential, disconnected=False, residual=residual)


def _component_ids(net: WeightedNetwork) -> np.ndarray:
    parent = np.arange(len(net.vertices))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j, c in zip(net.edge_i, net.edge_j, net.edge_c):
        if c > 0:
            ri, rj = find(int(i)), find(int(j))
            if ri != rj:
                parent[rj] = ri
    return np.array([find(int(i)) for i in range(len(net.vertices))])


def dirichlet_energy(net: WeightedNetwork, potential: dict[Vertex, float]) -> float:
    """Quadratic form sum_e c_e (f(u) - f(v))^2; requires f on every vertex."""
    f = np.array([potential[v] for v in net.vertices])
    df = f[net.edge_i] - f[net.edge_j]
    return float((net.edge_c * df * df).sum())


def contract(net: WeightedNetwork, S: Iterable[Vertex], label: Vertex = None) -> WeightedNetwork:
    """Merge the vertex set S into a single vertex; parallel edges are summed.

    Edges internal to S disappear.  The merged vertex keeps the given label,
    defaulting to the first element of S in network order.
    """
    S = set(S)
    if not S:
        raise ValueError("cannot contract an empty set")
    if label is None:
        label = next(v for v in net.vertices if v in S)
    keep = [v for v in net.vertices if v not in S]
    if label in net.index and label not in S:
        raise ValueError("contraction label collides with a kept vertex")
    merged: dict[tuple, float] = {}
    for u, v, c in net.edges():
        uu = label if u in S else u
        vv = label if v in S else v
        if uu == vv:
            continue
        key = (uu, vv) if str(uu) <= str(vv) else (vv, uu)
        merged[key] = merged.get(key, 0.0) + c
    return WeightedNetwork([label] + keep, [(u, v, c) for (u, v), c in merged.items()])


# -- flows -------------------------------------------------------------------


@dataclass
class FlowAssignment:
    """Antisymmetric edge flow: flows[(u, v)] is the flow from u to v.

    Only one orientation per edge is stored; theta(v, u) = -theta(u, v).
    Values may be floats or Fractions (Fractions make the checker exact).
    """

    flows: dict[tuple[Vertex, Vertex], float | Fraction]
    source: Vertex
    sinks: set[Vertex] = field(default_factory=set)

    def value(self, u: Vertex, v: Vertex):
        if (u, v) in self.flows:
            return self.flows[(u, v)]
        if (v, u) in self.flows:
            return -self.flows[(v, u)]
        return 0

    def divergence(self) -> dict[Vertex, float | Fraction]:
        out: dict[Vertex, float | Fraction] = {}
        for (u, v), t in self.flows.items():
            out[u] = out.get(u, 0) + t
            out[v] = out.get(v, 0) - t
        return out


def flow_energy(net: WeightedNetwork, flow: FlowAssignment) -> float:
    """sum_e theta(e)^2 / c_e over edges carrying flow; 1/c blows up on c = 0."""
    cmap: dict[tuple, float] = {}
    for u, v, c in net.edges():
        key = (u, v) if str(u) <= str(v) else (v, u)
        cmap[key] = cmap.get(key, 0.0) + c
    total = 0.0
    for (u, v), t in flow.flows.items():
        key = (u, v) if str(u) <= str(v) else (v, u)
        c = cmap.get(key, 0.0)
        t = float(t)
        if t == 0.0:
            continue
        if c == 0.0:
            raise ValueError(f"flow on zero-conductance edge ({u}, {v})")
        total += t * t / c
    return total


@dataclass
class FlowCheck:
    ok: bool
    violations: list[str]


def check_unit_flow(flow: FlowAssignment, source: Vertex | None = None,
                    sinks: Iterable[Vertex] | None = None, tol: float = 0.0) -> FlowCheck:
    """Verify antisymmetric storage, zero interior divergence, unit source strength.

    With integer or Fraction flow values the comparisons are exact; float
    flows may pass a tolerance.
    """
    source = flow.source if source is None else source
    sinks = set(flow.sinks if sinks is None else sinks)
    violations: list[str] = []
    exact = all(isinstance(t, Rational) for t in flow.flows.values())

    def near(a, b) -> bool:
        if exact:
            return a == b
        return abs(float(a) - float(b)) <= tol + 1e-12

    for (u, v) in flow.flows:
        if (v, u) in flow.flows and not near(flow.flows[(v, u)], -flow.flows[(u, v)]):
            violations.append(f"antisymmetry broken on ({u}, {v})")
    div = flow.divergence()
    strength = div.get(source, 0)
    if not near(strength, 1):
        violations.append(f"source strength {strength} != 1")
    sink_total = 0
    for v, d in div.items():
        if v == source:
            continue
        if v in sinks:
            sink_total += d
            continue
        if not near(d, 0):
            violations.append(f"nonzero divergence {d} at interior vertex {v}")
    if sinks and not near(sink_total, -1):
        violations.append(f"sink absorption {sink_total} != -1")
    return FlowCheck(not violations, violations)


# -- dyadic box flow to infinity --------------------------------------------


@dataclass
class BoxFlowResult:
    boxes: list[tuple[int, int]]          # (a_k, b_k) first-coordinate ranges
    stage_energies: list[float]           # energy between consecutive boxes, k = K..k_max-1
    initial_energy: float                 # energy of the direct spray 0 -> first box
    flow: FlowAssignment | None           # materialized stages only
    materialized_stages: int

    def energy_ratios(self) -> list[float]:
        return [b / a for a, b in zip(self.stage_energies, self.stage_energies[1:])]

    def cumulative_energy(self) -> float:
        return self.initial_energy + sum(self.stage_energies)


def box_chain_ranges(k_max: int) -> list[tuple[int, int]]:
    """First-coordinate ranges (a_k, b_k): a_0 = b_0 = 0, a_{k+1} = b_k + 2^{k+1},
    b_{k+1} = a_{k+1} + 2^{k+1} - 1.  The k-th box has side 2^k."""
    ranges = [(0, 0)]
    for k in range(k_max):
        a = ranges[-1][1] + 2 ** (k + 1)
        ranges.append((a, a + 2 ** (k + 1) - 1))
    return ranges


def box_vertices(k: int, ranges: list[tuple[int, int]], d: int) -> list[tuple[int, ...]]:
    a, b = ranges[k]
    side = 2**k
    if d == 1:
        return [(x,) for x in range(a, b + 1)]
    return [(x, y) for x in range(a, b + 1) for y in range(side)]


def dyadic_box_flow(d: int, s: float, K: int, k_max: int,
                    materialize_up_to: int | None = None,
                    norm: str = "inf") -> BoxFlowResult:
    """Unit flow to infinity through a chain of dyadic boxes, with stage energies.

    The flow leaves the origin uniformly onto the side-2^K box, and between
    consecutive boxes every vertex of box k sends 1/(|A_k| |A_{k+1}|) to every
    vertex of box k+1, against conductances c = ||x - y||^{-s}.  Stage energies
    for all k <= k_max are computed by exact summation over coordinate
    difference counts; only the first ``materialize_up_to`` stages are realized
    as an explicit FlowAssignment (with exact Fraction values).
    """
    if d not in (1, 2):
        raise ValueError("d must be 1 or 2")
    if not (d < s < 2 * d):
        raise ValueError(f"requires d < s < 2d, got s = {s}")
    if K < 0 or k_max <= K:
        raise ValueError("need 0 <= K < k_max")
    ranges = box_chain_ranges(k_max + 1)

    stage_energies = []
    for k in range(K, k_max):
        stage_energies.append(_stage_energy(d, s, k, ranges, norm))

    size_K = 2 ** (K * d)
    origin = (0,) * d
    init = 0.0
    for v in box_vertices(K, ranges, d):
        dist = _dist(origin, v, norm)
        init += (1.0 / size_K) ** 2 * dist**s

    mat = min(k_max, K + 3) if materialize_up_to is None else materialize_up_to
    flow = None
    if mat > K:
        flows: dict[tuple, Fraction] = {}
        for v in box_vertices(K, ranges, d):
            flows[(origin, v)] = Fraction(1, size_K)
        for k in range(K, mat):
            nk = 2 ** (k * d)
            nk1 = 2 ** ((k + 1) * d)
            t = Fraction(1, nk * nk1)
            for x in box_vertices(k, ranges, d):
                for y in box_vertices(k + 1, ranges, d):
                    flows[(x, y)] = t
        flow = FlowAssignment(flows, source=origin, sinks=set(box_vertices(mat, ranges, d)))
    return BoxFlowResult(ranges[: k_max + 1], stage_energies, init, flow, mat)


def _dist(x, y, norm: str) -> float:
    if norm == "euclidean":
        return math.sqrt(sum((a - b) ** 2 for a, b in zip(x, y)))
    return float(max(abs(a - b) for a, b in zip(x, y)))


def _overlap_counts(lo1: int, hi1: int, lo2: int, hi2: int) -> tuple[np.ndarray, np.ndarray]:
    """For x in [lo1,hi1], y in [lo2,hi2]: counts of each difference t = y - x."""
    ts = np.arange(lo2 - hi1, hi2 - lo1 + 1)
    cnt = np.minimum(hi1, hi2 - ts) - np.maximum(lo1, lo2 - ts) + 1
    return ts, np.maximum(cnt, 0)


def _stage_energy(d: int, s: float, k: int, ranges, norm: str) -> float:
    """Exact sum over A_k x A_{k+1} of theta^2 / c without materializing pairs."""
    a1, b1 = ranges[k]
    a2, b2 = ranges[k + 1]
    n1 = 2 ** (k * d)
    n2 = 2 ** ((k + 1) * d)
    t1, c1 = _overlap_counts(a1, b1, a2, b2)
    if d == 1:
        dist = np.abs(t1).astype(float)
        total = float((c1 * dist**s).sum())
    else:
        t2, c2 = _overlap_counts(0, 2**k - 1, 0, 2 ** (k + 1) - 1)
        total = 0.0
        chunk = max(1, 2**22 // len(t2))
        for start in range(0, len(t1), chunk):
            tt = t1[start : start + chunk]
            cc = c1[start : start + chunk]
            if norm == "euclidean":
                dist = np.sqrt(tt[:, None] ** 2.0 + t2[None, :] ** 2.0)
            else:
                dist = np.maximum(np.abs(tt)[:, None], np.abs(t2)[None, :]).astype(float)
            total += float((cc[:, None] * c2[None, :] * dist**s).sum())
    return total / (n1 * n2) ** 2


# -- random walk on a network -------------------------------------------------


@dataclass
class NetworkWalkStats:
    start: Vertex
    steps: int
    visits_to_start: int
    distinct_vertices: int
    trajectory_tail: list[Vertex]


def walk_on_network(net: WeightedNetwork, start: Vertex, T: int,
                    rng: np.random.Generator, keep_tail: int = 16) -> NetworkWalkStats:
    """Reversible chain: P(y -> x) = c_{x,y} / sum of weights at y.

    A vertex whose incident weights are all zero absorbs the walk.
    """
    nbr, wts = net.neighbor_lists()
    i = net.index[start]
    visits = 1
    seen = {i}
    traj = [i]
    cum = [np.cumsum(w) for w in wts]
    for _ in range(T):
        c = cum[i]
        if len(c) == 0 or c[-1] == 0.0:
            # all incident weights vanish: the chain stays put
            if net.vertices[i] == start:
                visits += 1
            traj.append(i)
            continue
        r = rng.random() * c[-1]
        i = int(nbr[i][np.searchsorted(c, r, side="right")])
        seen.add(i)
        if net.vertices[i] == start:
            visits += 1
        traj.append(i)
    return NetworkWalkStats(
        start=start,
        steps=T,
        visits_to_start=visits,
        distinct_vertices=len(seen),
        trajectory_tail=[net.vertices[t] for t in traj[-keep_tail:]],
    )


# -- stochastic domination of effective conductance ---------------------------


@dataclass
class DominationReport:
    baseline: float          # C_eff under the deterministic conductances
    estimate: float          # E[C_eff(omega)] (exact or Monte Carlo)
    std_error: float         # 0 for exact enumeration
    trials: int
    exact: bool

    @property
    def dominated(self) -> bool:
        return self.estimate <= self.baseline + 3.0 * self.std_error + 1e-9 * max(1.0, self.baseline)


def domination_test(net: WeightedNetwork, weight_sampler, A, B, trials: int,
                    rng: np.random.Generator) -> DominationReport:
    """Monte Carlo check that E[C_eff(A <-> B; omega)] <= C_eff(A <-> B).

    ``weight_sampler(rng)`` must return one conductance array aligned with
    net.edge_c whose mean is dominated by net.edge_c (caller's contract).
    """
    base = effective_conductance(net, A, B).value
    vals = np.empty(trials)
    for t in range(trials):
        w = np.asarray(weight_sampler(rng), dtype=np.float64)
        vals[t] = effective_conductance(net.with_edge_weights(w), A, B).value
    est = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return DominationReport(base, est, se, trials, exact=False)


def domination_enumeration(net: WeightedNetwork, edge_outcomes: list[list[tuple[float, float]]],
                           A, B, max_outcomes: int = 2**20) -> DominationReport:
    """Exact E[C_eff(omega)] by enumerating the product outcome space.

    edge_outcomes[e] lists (value, probability) pairs for edge e, probabilities
    summing to 1.  The outcome count (product of list lengths) must stay below
    ``max_outcomes``.
    """
    if len(edge_outcomes) != net.edge_count:
        raise ValueError("need one outcome list per edge")
    count = 1
    for outs in edge_outcomes:
        count *= len(outs)
        if count > max_outcomes:
            raise ValueError(f"outcome space exceeds {max_outcomes}")
    base = effective_conductance(net, A, B).value
    total = 0.0
    w = np.zeros(net.edge_count)
    idx = [0] * net.edge_count

    def rec(e: int, prob: float):
        nonlocal total
        if prob == 0.0:
            return
        if e == net.edge_count:
            total += prob * effective_conductance(net.with_edge_weights(w.copy()), A, B).value
            return
        for val, p in edge_outcomes[e]:
            w[e] = val
            rec(e + 1, prob * p)

    rec(0, 1.0)
    return DominationReport(base, float(total), 0.0, count, exact=True)
