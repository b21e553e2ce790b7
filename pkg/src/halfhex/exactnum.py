"""Exact scalar arithmetic.

Integers are Python ints and rationals are :class:`fractions.Fraction`, which
is always stored in lowest terms with a positive denominator, so ``==`` is
canonical-form equality.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from .errors import InvalidInput

Rational = Fraction
RationalLike = Union[int, Fraction]

__all__ = [
    "Rational",
    "binomial",
    "multichoose",
    "factorial",
    "vandermonde",
    "elementary_symmetric",
    "format_rational",
    "parse_rational",
]


def binomial(m: int, k: int) -> int:
    """C(m, k) for an integer top ``m >= 0``; zero when k lies outside [0, m]."""
    if m < 0:
        raise InvalidInput(f"binomial top must be nonnegative, got {m}")
    if k < 0 or k > m:
        return 0
    return math.comb(m, k)


def multichoose(a: int, k: int) -> int:
    """Number of size-``k`` multisets from ``a`` symbols, i.e. C(a+k-1, k).

    Defined for ``a >= 0``; equals 1 when ``k == 0`` even for ``a == 0``
    (the C(-1, 0) = 1 case), and 0 for ``k < 0``.
    """
    if a < 0:
        raise InvalidInput(f"multichoose needs a nonnegative alphabet size, got {a}")
    if k < 0:
        return 0
    if k == 0:
        return 1
    return math.comb(a + k - 1, k)


def factorial(m: int) -> int:
    if m < 0:
        raise InvalidInput(f"factorial of negative integer {m}")
    return math.factorial(m)


def vandermonde(values: Sequence[int]) -> int:
    """prod_{i<j} (values[j] - values[i]); 1 for fewer than two values."""
    result = 1
    for a, b in combinations(values, 2):
        result *= b - a
    return result


def elementary_symmetric(values: Sequence[int], k: int) -> int:
    """e_k(values) by the usual one-pass recurrence."""
    if k < 0 or k > len(values):
        return 0
    e = [1] + [0] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] += v * e[j - 1]
    return e[k]


def format_rational(value: RationalLike) -> str:
    """Lossless ``"p/q"`` text form (the denominator is always written)."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not an exact rational: {text!r}") from exc


def lcm_of_denominators(values: Iterable[RationalLike]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out
