"""Integer-lattice geometry: ternary box hierarchy, midpoints, oriented edge tilings.

Boxes of side N tile Z^2 as ``N*a + {0,...,N-1}^2`` for a box index ``a``.
The hierarchy uses sides 3^l; the midpoint of the level-l box containing x is
``m_l(x) = 3^l * a + ((3^l - 1)/2) * (1, 1)``.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterator

Point = tuple[int, ...]

COORD_BOUND = 2**63 - 1


class Orientation(Enum):
    """The four orientations a short edge (infinity-length 1) can have in Z^2.

    The member value is the anchor offset: an edge of orientation ``nu`` is
    ``{x, x + nu.offset}`` for its anchor ``x``.
    """

    DOWN_DIAG = (1, -1)
    UP_DIAG = (1, 1)
    VERTICAL = (0, 1)
    HORIZONTAL = (1, 0)

    @property
    def offset(self) -> tuple[int, int]:
        return self.value


ORIENTATIONS = tuple(Orientation)
_OFFSET_TO_ORIENT = {o.value: o for o in Orientation}


class Edge(tuple):
    """Unordered short or long lattice edge, stored as (min_endpoint, max_endpoint)."""

    __slots__ = ()

    def __new__(cls, u: Point, v: Point):
        if u == v:
            raise ValueError(f"degenerate edge at {u}")
        if v < u:
            u, v = v, u
        return tuple.__new__(cls, (u, v))

    @property
    def u(self) -> Point:
        return self[0]

    @property
    def v(self) -> Point:
        return self[1]

    @property
    def inf_length(self) -> int:
        return max(abs(a - b) for a, b in zip(self[0], self[1]))

    @property
    def is_short(self) -> bool:
        return self.inf_length == 1

    @property
    def orientation(self) -> Orientation:
        """Orientation of a short 2-d edge; raises for long or non-2d edges."""
        d = (self[1][0] - self[0][0], self[1][1] - self[0][1])
        try:
            return _OFFSET_TO_ORIENT[d]
        except KeyError:
            raise ValueError(f"edge {tuple(self)} has no short-edge orientation") from None

    @property
    def anchor(self) -> Point:
        """Anchor x of a short edge {x, x + offset}; equals the min endpoint."""
        self.orientation
        return self[0]


def check_point(x: Point) -> Point:
    """Reject coordinates outside the signed 64-bit range."""
    for c in x:
        if not -COORD_BOUND - 1 <= c <= COORD_BOUND:
            raise OverflowError(f"coordinate {c} exceeds the 64-bit range")
    return x


def inf_norm(x: Point) -> int:
    return max(abs(c) for c in x)


def euclidean_norm(x: Point) -> float:
    return sum(c * c for c in x) ** 0.5


def box_of(x: Point, level: int) -> Point:
    """Index a of the side-3^level box containing x (componentwise floor division)."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    check_point(x)
    side = 3**level
    return tuple(c // side for c in x)


def box_of_side(x: Point, side: int) -> Point:
    """Index of the side-N box containing x for an arbitrary positive side N."""
    if side < 1:
        raise ValueError("side must be positive")
    check_point(x)
    return tuple(c // side for c in x)


def box_points(a: Point, side: int) -> Iterator[Point]:
    """All points of the box with index a and the given side (2-d only)."""
    x0, y0 = a[0] * side, a[1] * side
    for i in range(side):
        for j in range(side):
            yield (x0 + i, y0 + j)


def midpoint(x: Point, level: int) -> Point:
    """Midpoint of the level-l box containing x; midpoint(x, 0) == x."""
    a = box_of(x, level)
    side = 3**level
    half = (side - 1) // 2
    m = tuple(side * c + half for c in a)
    return check_point(m)


def canonical_path(p: Point, q: Point, level: int) -> list[Edge]:
    """The straight single-orientation path of 3^level short edges from p to q.

    Valid only for midpoint pairs: p = m_l(x), q = m_{l+1}(x), whose distance
    is 0 or 3^level with each coordinate difference in {0, +-3^level}.
    Returns [] when p == q.
    """
    return [Edge(u, v) for u, v in zip(*(lambda vs: (vs[:-1], vs[1:]))(canonical_vertices(p, q, level)))]


def canonical_vertices(p: Point, q: Point, level: int) -> list[Point]:
    """Vertex sequence of the canonical path from p to q (see canonical_path)."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    check_point(p)
    check_point(q)
    if p == q:
        return [p]
    side = 3**level
    d = tuple(b - a for a, b in zip(p, q))
    if max(abs(c) for c in d) != side or any(c % side for c in d):
        raise ValueError(
            f"no canonical path between {p} and {q} at level {level}: "
            f"difference must lie in {{0, +-{side}}} per coordinate"
        )
    step = tuple(c // side for c in d)
    return [tuple(a + t * s for a, s in zip(p, step)) for t in range(side + 1)]


def orientation_edges(a: Point, side: int, orientation: Orientation) -> set[Edge]:
    """The side^2 edges of one orientation anchored in the box with index a.

    Tiles of equal side are disjoint across box indices because each edge is
    assigned to the box containing its anchor.
    """
    if side < 1:
        raise ValueError("side must be positive")
    dx, dy = orientation.offset
    x0, y0 = a[0] * side, a[1] * side
    out = set()
    for i in range(side):
        for j in range(side):
            u = (x0 + i, y0 + j)
            out.add(Edge(u, (u[0] + dx, u[1] + dy)))
    return out


def normalize_edge(u: Point, v: Point) -> tuple[Point, Orientation]:
    """(anchor, orientation) for the short edge {u, v}."""
    e = Edge(u, v)
    return e.anchor, e.orientation
