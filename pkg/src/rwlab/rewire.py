"""Hierarchical rewiring of a long-range network into a short-range one.

Every pair of points in boxes 2..7 apart at scale 3^k gets a multi-scale
lattice path: climb the midpoint hierarchy from x, cross between the two
scale-k box midpoints along box-center lines, and descend to y.  Edge loads
count, for each short edge, how many ordered pairs route through it; randomly
shifted copies of the load field, scaled by 10 * 3^{-3k} per level, plus a
bounded base field from short pairs, give conductances on the nearest-neighbor
lattice whose conductivity dominates the long-range network on covered scales.

Loads are computed exactly without enumerating point pairs: for a fixed short
edge, climbing-segment usage depends only on the box of the moving endpoint,
and crossing usage depends only on the ordered box pair, so the pair sum
collapses to per-box counts (see LoadModel).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .lattice import (
    Edge,
    Orientation,
    ORIENTATIONS,
    box_of,
    canonical_vertices,
    midpoint,
)
from .network import WeightedNetwork

PAIR_SEP_MIN = 2
PAIR_SEP_MAX = 7
BOX_NORM_MAX = 7           # boxes that can route through the base box
BASE_INCREMENT = 16        # weight added per short pair along its L-path
BASE_SEP_MAX = 8           # short pairs: 2 <= ||x-y||_inf <= 8
SCALE_INCREMENT_NUM = 10   # level-k increment is 10 * 3^{-3k}


def admissible_offsets(sep_max: int = PAIR_SEP_MAX) -> list[tuple[int, int]]:
    """Ordered box-index offsets with separation in [PAIR_SEP_MIN, sep_max]."""
    out = []
    for dx in range(-sep_max, sep_max + 1):
        for dy in range(-sep_max, sep_max + 1):
            if PAIR_SEP_MIN <= max(abs(dx), abs(dy)) <= sep_max:
                out.append((dx, dy))
    return out


# -- paths ---------------------------------------------------------------------


def ascent_vertices(x: tuple[int, int], k: int) -> list[tuple[int, int]]:
    """x -> m_1(x) -> ... -> m_k(x), each leg a canonical straight segment."""
    verts = [x]
    for level in range(k):
        target = midpoint(x, level + 1)
        seg = canonical_vertices(verts[-1], target, level)
        verts.extend(seg[1:])
    return verts


def crossing_vertices(k: int, a: tuple[int, int], b: tuple[int, int]) -> list[tuple[int, int]]:
    """Deterministic route between the midpoints of boxes a and b at scale 3^k.

    Diagonal box steps first (reducing both index coordinates), then axis
    steps; each box step is 3^k lattice steps of a single orientation, so the
    route length is max(|da|, |db|) * 3^k and, inside any one box, each
    orientation's edges lie on the single line through the box midpoint.
    """
    side = 3**k
    half = (side - 1) // 2
    cur = (a[0] * side + half, a[1] * side + half)
    verts = [cur]
    d1, d2 = b[0] - a[0], b[1] - a[1]
    s1 = (d1 > 0) - (d1 < 0)
    s2 = (d2 > 0) - (d2 < 0)
    ndiag = min(abs(d1), abs(d2))

    def run(ux: int, uy: int, steps: int) -> None:
        nonlocal cur
        for _ in range(steps):
            cur = (cur[0] + ux, cur[1] + uy)
            verts.append(cur)

    run(s1, s2, ndiag * side)
    run(s1, 0, (abs(d1) - ndiag) * side)
    run(0, s2, (abs(d2) - ndiag) * side)
    return verts


@dataclass
class HierarchyPath:
    """Multi-scale path between two points whose scale-k boxes are 2..7 apart.

    Not simple in general: the climb can retrace an edge the crossing reuses.
    Length counts traversals; edge_set ignores multiplicity.
    """

    x: tuple[int, int]
    y: tuple[int, int]
    level: int
    vertices: list[tuple[int, int]]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def edges(self) -> list[Edge]:
        return [Edge(u, v) for u, v in zip(self.vertices, self.vertices[1:])]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def edge_multiplicities(self) -> dict[Edge, int]:
        out: dict[Edge, int] = {}
        for e in self.edges():
            out[e] = out.get(e, 0) + 1
        return out


def hierarchy_path(x: tuple[int, int], y: tuple[int, int], k: int) -> HierarchyPath | None:
    """The level-k path from x to y, or None when their boxes are not 2..7 apart."""
    if k < 1:
        raise ValueError("k must be at least 1")
    a = box_of(x, k)
    b = box_of(y, k)
    sep = max(abs(a[0] - b[0]), abs(a[1] - b[1]))
    if not PAIR_SEP_MIN <= sep <= PAIR_SEP_MAX:
        return None
    up = ascent_vertices(x, k)
    cross = crossing_vertices(k, a, b)
    down = ascent_vertices(y, k)[::-1]
    verts = up + cross[1:] + down[1:]
    return HierarchyPath(x, y, k, verts)


# -- exact edge loads ----------------------------------------------------------


def _orientation_line_index(k: int):
    """Crossing edges of orientation nu have anchor residues on one line mod 3^k.

    Returns, per orientation, (test(i, j) -> on-line mask, position(i, j) -> t).
    """
    side = 3**k
    half = (side - 1) // 2
    return {
        Orientation.UP_DIAG: (lambda i, j: i == j, lambda i, j: i),
        Orientation.DOWN_DIAG: (lambda i, j: (i + j) % side == (2 * half) % side, lambda i, j: i),
        Orientation.VERTICAL: (lambda i, j: i == half, lambda i, j: j),
        Orientation.HORIZONTAL: (lambda i, j: j == half, lambda i, j: i),
    }


class LoadModel:
    """Exact pair loads at one hierarchy level, 3^k-periodic in both coordinates.

    For a short edge anchored in the base box, the ordered-pair count splits
    into crossing pairs (the whole box pair routes over the edge: side^4 pairs
    each) and climbing pairs (one endpoint's climb uses the edge: side^2 pairs
    per admissible far box, minus box pairs already counted as crossings).
    Crossing usage lives on four lines of residues, tabulated here; climbing
    counts come from the segment structure at query time.
    """

    def __init__(self, k: int, sep_max: int = PAIR_SEP_MAX, box_norm_max: int = BOX_NORM_MAX):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.k = k
        self.side = 3**k
        self.box_norm_max = box_norm_max
        self.offsets = admissible_offsets(sep_max)
        self._line = _orientation_line_index(k)
        side = self.side
        self.cross_total = {o: np.zeros(side, dtype=np.int64) for o in ORIENTATIONS}
        self.cross_from_base = {o: np.zeros(side, dtype=np.int64) for o in ORIENTATIONS}
        self.cross_to_base = {o: np.zeros(side, dtype=np.int64) for o in ORIENTATIONS}
        self._build_crossing_tables()

    # crossing tables ---------------------------------------------------------

    def _leg_arrays(self, start, unit, nsteps):
        """Anchors and orientation for nsteps lattice steps from start along unit."""
        if nsteps == 0:
            return None
        ux, uy = unit
        t = np.arange(nsteps, dtype=np.int64)
        if (ux, uy) in ((1, 1), (1, -1), (1, 0), (0, 1)):
            ax = start[0] + t * ux
            ay = start[1] + t * uy
            orient = Orientation((ux, uy))
        else:
            ax = start[0] + (t + 1) * ux
            ay = start[1] + (t + 1) * uy
            orient = Orientation((-ux, -uy))
        return ax, ay, orient

    def _build_crossing_tables(self) -> None:
        side = self.side
        half = (side - 1) // 2
        nmax = self.box_norm_max
        for delta in self.offsets:
            d1, d2 = delta
            s1 = (d1 > 0) - (d1 < 0)
            s2 = (d2 > 0) - (d2 < 0)
            ndiag = min(abs(d1), abs(d2))
            legs = []
            start = (half, half)
            if ndiag:
                legs.append((start, (s1, s2), ndiag * side))
                start = (start[0] + ndiag * side * s1, start[1] + ndiag * side * s2)
            rem1, rem2 = abs(d1) - ndiag, abs(d2) - ndiag
            if rem1:
                legs.append((start, (s1, 0), rem1 * side))
                start = (start[0] + rem1 * side * s1, start[1])
            if rem2:
                legs.append((start, (0, s2), rem2 * side))
            for leg in legs:
                arrs = self._leg_arrays(*leg)
                if arrs is None:
                    continue
                ax, ay, orient = arrs
                # the pair whose shifted route places this edge in the base
                # box is a* = -box(w), b* = a* + delta
                astar_x = -np.floor_divide(ax, side)
                astar_y = -np.floor_divide(ay, side)
                bx = astar_x + d1
                by = astar_y + d2
                ok = (
                    (np.maximum(np.abs(astar_x), np.abs(astar_y)) <= nmax)
                    & (np.maximum(np.abs(bx), np.abs(by)) <= nmax)
                )
                ri = ax + astar_x * side
                rj = ay + astar_y * side
                test, pos = self._line[orient]
                # crossing-edge residues always sit on the orientation's line
                assert bool(np.all(test(ri[ok], rj[ok])))
                t_idx = pos(ri, rj)
                np.add.at(self.cross_total[orient], t_idx[ok], 1)
                base_a = ok & (astar_x == 0) & (astar_y == 0)
                np.add.at(self.cross_from_base[orient], t_idx[base_a], 1)
                base_b = ok & (bx == 0) & (by == 0)
                np.add.at(self.cross_to_base[orient], t_idx[base_b], 1)

    # climbing counts ----------------------------------------------------------

    def climb_counts(self, i: np.ndarray, j: np.ndarray, orientation: Orientation) -> np.ndarray:
        """Number of points in the base box whose climb uses the edge at residue (i, j).

        At each level l < k the edge can sit on at most one straight segment
        from a child-box midpoint to its parent midpoint; the points sharing
        that segment are exactly that child box.  Child boxes from different
        levels either nest or are disjoint, so the union size is the sum of
        the maximal ones.
        """
        k = self.k
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        active = []
        child_x = []
        child_y = []
        for l in range(k):
            p_side = 3 ** (l + 1)
            c_side = 3**l
            cpx = np.floor_divide(i, p_side) * p_side + (p_side - 1) // 2
            cpy = np.floor_divide(j, p_side) * p_side + (p_side - 1) // 2
            v1 = i - cpx
            v2 = j - cpy
            if orientation is Orientation.UP_DIAG:
                on = (v1 == v2) & (v1 >= -c_side) & (v1 <= c_side - 1)
                ccx = np.where(v1 >= 0, cpx + c_side, cpx - c_side)
                ccy = np.where(v1 >= 0, cpy + c_side, cpy - c_side)
            elif orientation is Orientation.DOWN_DIAG:
                on = (v1 == -v2) & (v1 >= -c_side) & (v1 <= c_side - 1)
                ccx = np.where(v1 >= 0, cpx + c_side, cpx - c_side)
                ccy = np.where(v1 >= 0, cpy - c_side, cpy + c_side)
            elif orientation is Orientation.VERTICAL:
                on = (v1 == 0) & (v2 >= -c_side) & (v2 <= c_side - 1)
                ccx = cpx
                ccy = np.where(v2 >= 0, cpy + c_side, cpy - c_side)
            else:
                on = (v2 == 0) & (v1 >= -c_side) & (v1 <= c_side - 1)
                ccx = np.where(v1 >= 0, cpx + c_side, cpx - c_side)
                ccy = cpy
            active.append(on)
            child_x.append(np.floor_divide(ccx, c_side))
            child_y.append(np.floor_divide(ccy, c_side))

        total = np.zeros(i.shape, dtype=np.int64)
        for l in range(k):
            contained = np.zeros(i.shape, dtype=bool)
            for lp in range(l + 1, k):
                f = 3 ** (lp - l)
                contained |= (
                    active[lp]
                    & (np.floor_divide(child_x[l], f) == child_x[lp])
                    & (np.floor_divide(child_y[l], f) == child_y[lp])
                )
            total += np.where(active[l] & ~contained, 9**l, 0)
        return total

    # loads ---------------------------------------------------------------------

    def load_batch(self, i: np.ndarray, j: np.ndarray, orientation: Orientation) -> np.ndarray:
        """Exact loads for edges of one orientation at anchor residues (i, j)."""
        i = np.mod(np.asarray(i, dtype=np.int64), self.side)
        j = np.mod(np.asarray(j, dtype=np.int64), self.side)
        side2 = self.side**2
        # far boxes reachable from the base box inside the pair universe
        n_far = sum(1 for d in self.offsets
                    if max(abs(d[0]), abs(d[1])) <= self.box_norm_max)
        climb = self.climb_counts(i, j, orientation)
        test, pos = self._line[orientation]
        on_line = test(i, j)
        t_idx = pos(i, j)
        ct = np.where(on_line, self.cross_total[orientation][t_idx], 0)
        ca = np.where(on_line, self.cross_from_base[orientation][t_idx], 0)
        cb = np.where(on_line, self.cross_to_base[orientation][t_idx], 0)
        return side2**2 * ct + climb * side2 * (2 * n_far - ca - cb)

    def load(self, edge: Edge) -> int:
        anchor, orient = edge.anchor, edge.orientation
        out = self.load_batch(np.array([anchor[0]]), np.array([anchor[1]]), orient)
        return int(out[0])

    def table(self, orientation: Orientation) -> np.ndarray:
        """Full (side, side) load table over the fundamental domain of anchors."""
        if self.side > 1000:
            raise ValueError("full tables are limited to 3^k <= 1000; use load_batch")
        ii, jj = np.meshgrid(np.arange(self.side), np.arange(self.side), indexing="ij")
        return self.load_batch(ii.ravel(), jj.ravel(), orientation).reshape(self.side, self.side)


@dataclass
class LoadTable:
    """Materialized per-orientation load tables plus threshold counting."""

    level: int
    model: LoadModel = field(repr=False)
    tables: dict[Orientation, np.ndarray] = field(repr=False)

    def load(self, edge: Edge) -> int:
        a = edge.anchor
        return int(self.tables[edge.orientation][a[0] % self.model.side, a[1] % self.model.side])

    def tail_count(self, orientation: Orientation, threshold: float) -> int:
        """Edges of one orientation anchored in the base box with load >= threshold."""
        return int((self.tables[orientation] >= threshold).sum())

    def max_load(self) -> int:
        return int(max(t.max() for t in self.tables.values()))

    def loads_sorted(self, orientation: Orientation) -> np.ndarray:
        return np.sort(self.tables[orientation].ravel())


def edge_loads(k: int, window_radius: int | None = None) -> LoadTable:
    """Exact loads at level k for all short edges (periodic beyond the base box).

    window_radius, if given, must cover the base box plus the annulus of boxes
    up to 7 away (anything smaller cannot contain every contributing pair).
    """
    side = 3**k
    required = side * (BOX_NORM_MAX + 1)
    if window_radius is not None and window_radius < required:
        raise ValueError(
            f"window radius {window_radius} too small: loads at level {k} draw on "
            f"points out to inf-norm {required}"
        )
    model = LoadModel(k)
    tables = {o: model.table(o) for o in ORIENTATIONS}
    return LoadTable(k, model, tables)


# -- weight fields --------------------------------------------------------------


@lru_cache(maxsize=None)
def base_weight_value(orientation: Orientation) -> int:
    """Weight each edge of one orientation receives from all short pairs.

    A pair (x, y) with 2 <= ||x-y||_inf <= 8 contributes BASE_INCREMENT along
    its L-path (vertical leg then horizontal leg), so a vertical edge collects
    BASE_INCREMENT times the number of offsets weighted by |dy| (and likewise
    horizontally); diagonal edges collect nothing.
    """
    total = 0
    for dx in range(-BASE_SEP_MAX, BASE_SEP_MAX + 1):
        for dy in range(-BASE_SEP_MAX, BASE_SEP_MAX + 1):
            if not PAIR_SEP_MIN <= max(abs(dx), abs(dy)) <= BASE_SEP_MAX:
                continue
            if orientation is Orientation.VERTICAL:
                total += abs(dy)
            elif orientation is Orientation.HORIZONTAL:
                total += abs(dx)
    return BASE_INCREMENT * total


def l_path_vertices(x: tuple[int, int], y: tuple[int, int]) -> list[tuple[int, int]]:
    """Vertical-then-horizontal lattice path from x to y."""
    verts = [x]
    step = 1 if y[1] > x[1] else -1
    for t in range(abs(y[1] - x[1])):
        verts.append((x[0], x[1] + (t + 1) * step))
    step = 1 if y[0] > x[0] else -1
    for t in range(abs(y[0] - x[0])):
        verts.append((x[0] + (t + 1) * step, y[1]))
    return verts


@dataclass(frozen=True)
class Window:
    """Inclusive rectangle of lattice points."""

    lo: tuple[int, int]
    hi: tuple[int, int]

    @classmethod
    def centered(cls, radius: int) -> "Window":
        return cls((-radius, -radius), (radius, radius))

    def points(self):
        for x in range(self.lo[0], self.hi[0] + 1):
            for y in range(self.lo[1], self.hi[1] + 1):
                yield (x, y)

    def contains(self, p: tuple[int, int]) -> bool:
        return self.lo[0] <= p[0] <= self.hi[0] and self.lo[1] <= p[1] <= self.hi[1]

    def short_edges(self):
        """Short edges with both endpoints inside the window."""
        for p in self.points():
            for o in ORIENTATIONS:
                q = (p[0] + o.offset[0], p[1] + o.offset[1])
                if self.contains(q):
                    yield Edge(p, q)


@dataclass
class WeightField:
    """Short-edge weights: constant base part plus per-level shifted load fields.

    Exact values are rationals with denominator 3^{3k}; value() returns floats,
    exact_value() the Fraction.
    """

    window: Window
    shifts: dict[int, tuple[int, int]]
    base_included: bool
    level_loads: dict[int, dict[Orientation, np.ndarray]] = field(repr=False)

    def _window_index(self, edge: Edge) -> tuple[int, int]:
        a = edge.anchor
        return a[0] - self.window.lo[0], a[1] - self.window.lo[1]

    def exact_value(self, edge: Edge) -> Fraction:
        o = edge.orientation
        i, j = self._window_index(edge)
        total = Fraction(base_weight_value(o)) if self.base_included else Fraction(0)
        for k, tables in self.level_loads.items():
            total += Fraction(int(tables[o][i, j]) * SCALE_INCREMENT_NUM, 27**k)
        return total

    def value(self, edge: Edge) -> float:
        return float(self.exact_value(edge))

    def float_table(self, orientation: Orientation) -> np.ndarray:
        """Window-shaped float weights of one orientation."""
        shape = (self.window.hi[0] - self.window.lo[0] + 1,
                 self.window.hi[1] - self.window.lo[1] + 1)
        out = np.full(shape, float(base_weight_value(orientation)) if self.base_included else 0.0)
        for k, tables in self.level_loads.items():
            out += tables[orientation] * (SCALE_INCREMENT_NUM / 27.0**k)
        return out

    def to_network(self) -> WeightedNetwork:
        lo, hi = self.window.lo, self.window.hi
        verts = list(self.window.points())
        edges: list[tuple] = []
        for o in ORIENTATIONS:
            vals = self.float_table(o)
            dx, dy = o.offset
            for i in range(vals.shape[0]):
                x = lo[0] + i
                if not lo[0] <= x + dx <= hi[0]:
                    continue
                row = vals[i]
                for j in range(vals.shape[1]):
                    y = lo[1] + j
                    if lo[1] <= y + dy <= hi[1]:
                        edges.append(((x, y), (x + dx, y + dy), float(row[j])))
        return WeightedNetwork(verts, edges)

    def to_text(self) -> str:
        """Network text format with the shifts recorded in header comments."""
        lines = [f"# rewired-weights base={'1' if self.base_included else '0'}"]
        for k in sorted(self.shifts):
            r = self.shifts[k]
            lines.append(f"# shift {k} {r[0]} {r[1]}")
        return "\n".join(lines) + "\n" + self.to_network().to_text()


def scale_weight_field(k: int, shift: tuple[int, int], window: Window,
                       model: LoadModel | None = None) -> dict[Orientation, np.ndarray]:
    """Level-k load table under one shift, on window anchors.

    The weight of edge e is the load of e + shift, scaled by 10 * 3^{-3k};
    tables here hold the raw integer loads.
    """
    side = 3**k
    if not (0 <= shift[0] < side and 0 <= shift[1] < side):
        raise ValueError(f"shift must lie in [0, {side})^2")
    model = LoadModel(k) if model is None else model
    nx = window.hi[0] - window.lo[0] + 1
    ny = window.hi[1] - window.lo[1] + 1
    ii, jj = np.meshgrid(
        np.arange(window.lo[0], window.hi[0] + 1) + shift[0],
        np.arange(window.lo[1], window.hi[1] + 1) + shift[1],
        indexing="ij",
    )
    return {
        o: model.load_batch(ii.ravel(), jj.ravel(), o).reshape(nx, ny) for o in ORIENTATIONS
    }


def rewired_weights(window: Window, k_max: int, shifts: dict[int, tuple[int, int]] | None = None,
                    rng: np.random.Generator | None = None, include_base: bool = True,
                    models: dict[int, LoadModel] | None = None) -> WeightField:
    """Combined field: base weights plus shifted level fields for k = 1..k_max."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if shifts is None:
        if rng is None:
            raise ValueError("provide shifts or an rng to draw them")
        shifts = {k: tuple(int(v) for v in rng.integers(0, 3**k, size=2)) for k in range(1, k_max + 1)}
    if sorted(shifts) != list(range(1, k_max + 1)):
        raise ValueError("shifts must cover exactly k = 1..k_max")
    level_loads = {}
    for k in range(1, k_max + 1):
        model = models.get(k) if models else None
        level_loads[k] = scale_weight_field(k, shifts[k], window, model)
    return WeightField(window, dict(shifts), include_base, level_loads)


# -- shift-distribution sampling (tail studies) ---------------------------------


class ShiftWeightSampler:
    """Random-part weight of one fixed edge under independent uniform shifts.

    Vectorized over sample batches: per level the shifted anchor residues feed
    LoadModel.load_batch, so a batch costs O(k_max) table lookups per sample.
    The base field is deterministic and excluded by default, matching its
    irrelevance to tail behavior.
    """

    def __init__(self, edge: Edge, k_max: int, include_base: bool = False,
                 models: dict[int, LoadModel] | None = None):
        self.edge = edge
        self.k_max = k_max
        self.include_base = include_base
        self.models = models or {}
        for k in range(1, k_max + 1):
            self.models.setdefault(k, LoadModel(k))

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        anchor = self.edge.anchor
        orient = self.edge.orientation
        total = np.zeros(n)
        if self.include_base:
            total += float(base_weight_value(orient))
        for k in range(1, self.k_max + 1):
            side = 3**k
            r = rng.integers(0, side, size=(n, 2))
            loads = self.models[k].load_batch(anchor[0] + r[:, 0], anchor[1] + r[:, 1], orient)
            total += loads * (SCALE_INCREMENT_NUM / 27.0**k)
        return total


def exhaustive_scale_distribution(k: int, orientation: Orientation,
                                  model: LoadModel | None = None) -> np.ndarray:
    """Level-k weights of one edge over all 9^k shifts (every residue once)."""
    model = LoadModel(k) if model is None else model
    loads = model.table(orientation).ravel()
    return np.sort(loads * (SCALE_INCREMENT_NUM / 27.0**k))


# -- conductivity comparison -----------------------------------------------------


@dataclass
class ComparisonReport:
    rewired_value: float
    long_range_value: float
    core_radius: int
    padded_radius: int
    k_max: int
    shifts: dict[int, tuple[int, int]]
    max_length: int

    @property
    def ratio(self) -> float:
        return self.rewired_value / self.long_range_value

    @property
    def dominates(self) -> bool:
        return self.rewired_value >= self.long_range_value


def long_range_box_network(radius: int, min_len: int, max_len: int, exponent: float = 4.0) -> WeightedNetwork:
    """Box of lattice points with c = ||x-y||_inf^{-exponent} on lengths [min_len, max_len]."""
    pts = [(x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)]
    edges = []
    m = 2 * radius + 1
    for dx in range(0, max_len + 1):
        for dy in range(-max_len, max_len + 1):
            if dx == 0 and dy <= 0:
                continue
            ln = max(dx, abs(dy))
            if not min_len <= ln <= max_len:
                continue
            c = float(ln) ** (-exponent)
            for x in range(-radius, radius + 1 - dx):
                y0 = max(-radius, -radius - dy)
                y1 = min(radius, radius - dy)
                for y in range(y0, y1 + 1):
                    edges.append(((x, y), (x + dx, y + dy), c))
    return WeightedNetwork(pts, edges)


def conductivity_comparison(core_radius: int, k_max: int,
                            shifts: dict[int, tuple[int, int]] | None = None,
                            rng: np.random.Generator | None = None,
                            A: list[tuple[int, int]] | None = None,
                            B: list[tuple[int, int]] | None = None,
                            models: dict[int, LoadModel] | None = None,
                            long_range_value: float | None = None) -> ComparisonReport:
    """Rewired short-range conductivity vs the covered-scale long-range network.

    Defaults to C_eff({origin} <-> boundary of the core box); A and B must lie
    in the core.  The rewired network lives on the core padded by 8 * 3^k_max
    on all sides (paths of covered pairs stay inside); the long-range
    comparison keeps edges of inf-length 2..2*3^k_max on the core box only,
    which by Rayleigh only lowers its conductivity.
    """
    from .network import effective_conductance

    pad = 8 * 3**k_max
    padded = core_radius + pad
    max_len = 2 * 3**k_max
    if core_radius < 1:
        raise ValueError("core radius must be positive")
    if A is None:
        A = [(0, 0)]
    if B is None:
        B = [(x, y) for x in range(-core_radius, core_radius + 1)
             for y in range(-core_radius, core_radius + 1)
             if max(abs(x), abs(y)) == core_radius]
    for v in list(A) + list(B):
        if max(abs(v[0]), abs(v[1])) > core_radius:
            raise ValueError(f"terminal {v} lies outside the padded core; "
                             f"grow core_radius or shrink the sets")

    field = rewired_weights(Window.centered(padded), k_max, shifts=shifts, rng=rng, models=models)
    net = field.to_network()
    rew = effective_conductance(net, A, B).value

    if long_range_value is None:
        lr_net = long_range_box_network(core_radius, PAIR_SEP_MIN, max_len)
        long_range_value = effective_conductance(lr_net, A, B).value
    return ComparisonReport(rew, long_range_value, core_radius, padded, k_max,
                            field.shifts, max_len)


# -- Cauchy-tail estimation -------------------------------------------------------


@dataclass
class TailEstimate:
    thresholds: list[float]
    tail_probs: list[float]
    fitted_constant: float
    sample_count: int

    def scaled_tails(self) -> list[float]:
        return [t * p for t, p in zip(self.thresholds, self.tail_probs)]


def cauchy_tail_estimate(samples: np.ndarray, thresholds: list[float]) -> TailEstimate:
    """Empirical tails plus the smallest C with P(X > C t) <= C / t at all thresholds.

    A law has a Cauchy tail when such a constant exists; checking geometric
    threshold ladders t = C' 3^j suffices, which is how callers build the
    threshold list.
    """
    samples = np.asarray(samples, dtype=np.float64)
    n = len(samples)
    if n == 0:
        raise ValueError("no samples")
    tails = [float((samples > t).mean()) for t in thresholds]

    def admissible(C: float) -> bool:
        return all((samples > C * t).mean() <= C / t for t in thresholds)

    lo, hi = 1e-9, 1.0
    while not admissible(hi):
        hi *= 2.0
        if hi > 1e12:
            return TailEstimate(list(thresholds), tails, math.inf, n)
    for _ in range(60):
        mid = math.sqrt(lo * hi)
        if admissible(mid):
            hi = mid
        else:
            lo = mid
    return TailEstimate(list(thresholds), tails, hi, n)
