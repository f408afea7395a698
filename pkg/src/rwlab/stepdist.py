"""Symmetric step distributions on Z^d.

Two families: a truncated power law P(x) proportional to ||x||^{-s} on
0 < ||x||_inf <= R, and the integer-rounded standard Cauchy step
X = sgn(Y) * ceil(|Y|) with Y standard Cauchy.  Both expose exact pmf
evaluation; sampling uses an alias table for the power law and inverse-CDF
rounding for the Cauchy step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .lattice import Point, check_point

NORM_INF = "inf"
NORM_EUCLIDEAN = "euclidean"

_NORM_FUNCS = {
    NORM_INF: lambda x: float(max(abs(c) for c in x)),
    NORM_EUCLIDEAN: lambda x: math.sqrt(sum(c * c for c in x)),
}


def _build_alias(probs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vose alias table: returns (alias index, acceptance threshold) arrays."""
    n = len(probs)
    scaled = probs * n
    alias = np.zeros(n, dtype=np.int64)
    accept = np.ones(n)
    small = [i for i, p in enumerate(scaled) if p < 1.0]
    large = [i for i, p in enumerate(scaled) if p >= 1.0]
    scaled = scaled.copy()
    while small and large:
        s = small.pop()
        l = large.pop()
        accept[s] = scaled[s]
        alias[s] = l
        scaled[l] -= 1.0 - scaled[s]
        (small if scaled[l] < 1.0 else large).append(l)
    return alias, accept


@dataclass
class StepDistribution:
    """Symmetric step law on Z^d with exact pmf access.

    kind is "power-law" (finite support, radius R in the inf-norm) or
    "discretized-cauchy" (d = 1, unbounded support, pmf by arctan differences).
    """

    dimension: int
    kind: str
    exponent: float | None = None
    truncation: int | None = None
    norm: str = NORM_INF
    normalization: float = 1.0
    _support: list[Point] = field(default_factory=list, repr=False)
    _probs: np.ndarray | None = field(default=None, repr=False)
    _alias: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    def pmf(self, x: Point) -> float:
        """Exact P(X = x)."""
        if self.kind == "discretized-cauchy":
            y = x[0] if isinstance(x, tuple) else int(x)
            if y == 0:
                return 0.0
            a = abs(y)
            return (math.atan(a) - math.atan(a - 1)) / math.pi
        check_point(x if isinstance(x, tuple) else (x,))
        r = max(abs(c) for c in x)
        if r == 0 or r > self.truncation:
            return 0.0
        return _NORM_FUNCS[self.norm](x) ** (-self.exponent) / self.normalization

    def pmf_1d_array(self, radius: int) -> np.ndarray:
        """pmf on [-radius, radius] as an array (index i holds P(i - radius)); d = 1 only."""
        if self.dimension != 1:
            raise ValueError("pmf_1d_array requires d = 1")
        xs = np.arange(-radius, radius + 1)
        if self.kind == "discretized-cauchy":
            a = np.abs(xs)
            out = (np.arctan(a) - np.arctan(a - 1)) / math.pi
            out[radius] = 0.0
            return out
        out = np.zeros(len(xs))
        for i, x in enumerate(xs):
            out[i] = self.pmf((int(x),))
        return out

    def support(self) -> list[Point]:
        if self.kind == "discretized-cauchy":
            raise ValueError("the discretized Cauchy step has unbounded support")
        return list(self._support)

    def sample(self, rng: np.random.Generator, size: int = 1) -> np.ndarray:
        """i.i.d. draws, shape (size, d)."""
        if self.kind == "discretized-cauchy":
            y = rng.standard_cauchy(size)
            vals = np.sign(y) * np.ceil(np.abs(y))
            # Y = 0 has probability zero; guard the degenerate float anyway.
            vals[vals == 0] = 1
            return vals.astype(np.int64).reshape(size, 1)
        alias, accept = self._alias
        k = rng.integers(0, len(alias), size=size)
        take_alias = rng.random(size) >= accept[k]
        k[take_alias] = alias[k[take_alias]]
        pts = np.asarray(self._support, dtype=np.int64)
        return pts[k]

    def total_mass_within(self, radius: int) -> float:
        """P(||X||_inf <= radius); used for truncation audits (d = 1 Cauchy)."""
        if self.kind == "discretized-cauchy":
            return 2.0 * math.atan(radius) / math.pi
        if radius >= self.truncation:
            return 1.0
        return float(sum(self.pmf(x) for x in self._support if max(abs(c) for c in x) <= radius))


def power_law_pmf(d: int, s: float, R: int, norm: str = NORM_INF) -> StepDistribution:
    """Truncated power law: P(x) = Z^{-1} ||x||^{-s} on 0 < ||x||_inf <= R.

    Requires s > d (otherwise the weights are not summable on Z^d) and R >= 1.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if s <= d:
        raise ValueError(f"exponent s = {s} must exceed the dimension d = {d}")
    if R < 1:
        raise ValueError("truncation radius must be at least 1")
    if norm not in _NORM_FUNCS:
        raise ValueError(f"unknown norm {norm!r}")
    nf = _NORM_FUNCS[norm]
    supp = [x for x in product(range(-R, R + 1), repeat=d) if any(x)]
    weights = np.array([nf(x) ** (-s) for x in supp])
    Z = float(weights.sum())
    probs = weights / Z
    dist = StepDistribution(
        dimension=d,
        kind="power-law",
        exponent=s,
        truncation=R,
        norm=norm,
        normalization=Z,
        _support=supp,
        _probs=probs,
    )
    dist._alias = _build_alias(probs)
    return dist


def discretized_cauchy() -> StepDistribution:
    """Integer-rounded standard Cauchy step: P(y) = (1/pi) * int_{|y|-1}^{|y|} dt/(1+t^2)."""
    return StepDistribution(dimension=1, kind="discretized-cauchy", norm=NORM_EUCLIDEAN)


def as_conductances(dist: StepDistribution, window: list[Point], normalized: bool = True):
    """Conductance network on a finite window: c_{a,b} = P(a - b).

    For the discretized Cauchy step, ``normalized=False`` uses the raw slab
    integrals int_{|y|-1}^{|y|} dt/(1+t^2) (a constant factor pi larger),
    which leaves every conductance ratio unchanged.
    """
    from .network import WeightedNetwork

    scale = 1.0
    if not normalized:
        if dist.kind != "discretized-cauchy":
            raise ValueError("unnormalized conductances exist only for the Cauchy step")
        scale = math.pi
    edges = []
    for i, a in enumerate(window):
        for b in window[i + 1 :]:
            diff = tuple(p - q for p, q in zip(a, b))
            c = dist.pmf(diff) * scale
            if c > 0:
                edges.append((a, b, c))
    return WeightedNetwork.from_edges(edges, vertices=window)
