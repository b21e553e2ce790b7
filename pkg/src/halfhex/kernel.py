"""Correlation kernels for the walker ensemble.

Three independent routes to K(r, x; s, y):

* :func:`em_kernel` assembles the Eynard-Mehta form from ``phi`` and a
  stored inverse of the LGV matrix;
* :func:`general_kernel` is the explicit double sum for arbitrary end points;
* :func:`halfhex_kernel` is the same sum specialised to ``N = n+1, y_i = 2i``.

m-point occupation probabilities are determinants of K over the query points.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from .binomial_matrix import (
    ExactMatrix,
    bareiss_det,
    build_M,
    closed_form_inverse,
    gauss_jordan_inverse,
)
from .errors import InvalidInput
from .exactnum import binomial, factorial, multichoose
from .ensemble import EnsembleSpec, SpaceTimePoint, phi


def _check_time(N: int, *times: int) -> None:
    for t in times:
        if not 1 <= t <= N - 1:
            raise InvalidInput(
                f"time {t} is not interior; kernel queries need 1 <= t <= {N - 1}"
            )


@dataclass(frozen=True)
class KernelContext:
    """An ensemble together with the exact inverse of its LGV matrix."""

    spec: EnsembleSpec
    minv: ExactMatrix
    _cache: Dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(cls, spec: EnsembleSpec) -> "KernelContext":
        try:
            minv = closed_form_inverse(spec.matrix_spec())
        except InvalidInput:
            minv = gauss_jordan_inverse(build_M(spec.matrix_spec()))
        return cls(spec, minv)

    @classmethod
    def half_hexagon(cls, n: int) -> "KernelContext":
        return cls.build(EnsembleSpec.half_hexagon(n))


def em_kernel(ctx: KernelContext, r: int, x: int, s: int, y: int) -> Fraction:
    """-phi_{r,s}(x,y) + sum_{i,j} phi_{r,N}(x, y_i) [M^-1]_{ij} phi_{0,s}(j, y)."""
    spec = ctx.spec
    N = spec.N
    _check_time(N, r, s)
    key = (r, x, s, y)
    cached = ctx._cache.get(key)
    if cached is not None:
        return cached
    total = Fraction(-phi(r, s, x, y))
    left = [phi(r, N, x, y_i) for y_i in spec.ends]
    right = [phi(0, s, j, y) for j in spec.starts]
    for i in range(1, spec.n + 1):
        a = left[i - 1]
        if not a:
            continue
        for j in range(1, spec.n + 1):
            b = right[j - 1]
            if b:
                total += a * b * ctx.minv.entry(i, j)
    ctx._cache[key] = total
    return total


@lru_cache(maxsize=None)
def _general_inner(N: int, ends: Tuple[int, ...], i: int, j: int) -> Fraction:
    """sum_{k=1..j} C(N+n-1, k-1) C(N-1+j-k, j-k) (-1)^(k+j) prod_{l != i} (k-y_l)/(y_i-y_l)."""
    n = len(ends)
    y_i = ends[i - 1]
    total = Fraction(0)
    for k in range(1, j + 1):
        term = Fraction(binomial(N + n - 1, k - 1) * multichoose(N, j - k) * (-1) ** (k + j))
        for l in range(1, n + 1):
            if l != i:
                term *= Fraction(k - ends[l - 1], y_i - ends[l - 1])
        total += term
    return total


def general_kernel(spec: EnsembleSpec, r: int, x: int, s: int, y: int) -> Fraction:
    """Explicit kernel for start points 1..n and arbitrary end points::

        -phi_{r,s}(x,y) + sum_{i,j} C(N-r, y_i-x) C(s, y-j) / C(N+n-1, y_i-1) * inner(i, j)
    """
    N, n, ends = spec.N, spec.n, spec.ends
    _check_time(N, r, s)
    total = Fraction(-phi(r, s, x, y))
    for i in range(1, n + 1):
        a = binomial(N - r, ends[i - 1] - x)
        if not a:
            continue
        denom = binomial(N + n - 1, ends[i - 1] - 1)
        for j in range(1, n + 1):
            b = binomial(s, y - j)
            if b:
                total += Fraction(a * b, denom) * _general_inner(N, ends, i, j)
    return total


@lru_cache(maxsize=None)
def _halfhex_inner(n: int, i: int, j: int) -> Fraction:
    """sum_{k=1..j} C(2n, k-1) C(n+j-k, j-k) (-1)^(k+j+i+n) / ((i-1)!(n-i)!) prod_{l != i} (k-2l), over 2^(n-1).

    For y_i = 2i, prod_{l != i} (y_i - y_l) = (-1)^(n-i) 2^(n-1) (i-1)! (n-i)!,
    which is where the sign, factorials and power of two come from.
    """
    total = 0
    for k in range(1, j + 1):
        term = binomial(2 * n, k - 1) * binomial(n + j - k, j - k)
        for l in range(1, n + 1):
            if l != i:
                term *= k - 2 * l
        total += -term if (k + j + i + n) % 2 else term
    return Fraction(total, factorial(i - 1) * factorial(n - i) * 2 ** (n - 1))


def halfhex_kernel(n: int, r: int, x: int, s: int, y: int) -> Fraction:
    """Kernel of the order-n half-hexagon (N = n+1, y_i = 2i)."""
    if n < 1:
        raise InvalidInput(f"order must be positive, got {n}")
    _check_time(n + 1, r, s)
    total = Fraction(-phi(r, s, x, y))
    for i in range(1, n + 1):
        a = binomial(n + 1 - r, 2 * i - x)
        if not a:
            continue
        denom = binomial(2 * n, 2 * i - 1)
        for j in range(1, n + 1):
            b = binomial(s, y - j)
            if b:
                total += Fraction(a * b, denom) * _halfhex_inner(n, i, j)
    return total


@dataclass(frozen=True)
class CorrelationQuery:
    points: Tuple[SpaceTimePoint, ...]

    def __post_init__(self):
        pts = tuple(SpaceTimePoint(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise InvalidInput("query points must be distinct")

    def check(self, spec: EnsembleSpec) -> None:
        _check_time(spec.N, *(p.t for p in self.points))


def kernel_matrix(ctx: KernelContext, points: Sequence[SpaceTimePoint]) -> ExactMatrix:
    return ExactMatrix.from_rows(
        [[em_kernel(ctx, p.t, p.x, q.t, q.x) for q in points] for p in points]
    )


def correlation(ctx: KernelContext, query) -> Fraction:
    """Probability that every query point is occupied: det[K(p_a; p_b)]."""
    if not isinstance(query, CorrelationQuery):
        query = CorrelationQuery(tuple(query))
    query.check(ctx.spec)
    value = bareiss_det(kernel_matrix(ctx, query.points))
    if not 0 <= value <= 1:
        raise ArithmeticError(f"correlation {value} outside [0, 1] for {query.points}")
    return value


def one_point_profile(ctx: KernelContext, t: int) -> Dict[int, Fraction]:
    """K(t,x;t,x) over the reachable strip at time t."""
    _check_time(ctx.spec.N, t)
    return {x: em_kernel(ctx, t, x, t, x) for x in ctx.spec.reachable(t)}
