"""The binomial matrix M = [C(A, B_j - i)] and its exact inverse.

All formula code below indexes rows and columns from 1; :class:`ExactMatrix`
hides the 0-based storage behind :meth:`ExactMatrix.entry`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Sequence, Tuple, Union

from .errors import InvalidInput
from .exactnum import (
    binomial,
    factorial,
    lcm_of_denominators,
    multichoose,
    vandermonde,
)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable rectangular matrix of exact rationals."""

    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise InvalidInput("matrix rows have unequal lengths")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Number]]) -> "ExactMatrix":
        return cls(tuple(tuple(Fraction(v) for v in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> Fraction:
        """1-based access, matching the way the formulas are written."""
        return self.rows[i - 1][j - 1]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return matmul(self, other)

    def to_lists(self) -> List[List[Fraction]]:
        return [list(r) for r in self.rows]


def identity(n: int) -> ExactMatrix:
    return ExactMatrix.identity(n)


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.ncols != b.nrows:
        raise InvalidInput(f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    cols = [tuple(r[j] for r in b.rows) for j in range(b.ncols)]
    return ExactMatrix(
        tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a.rows)
    )


@dataclass(frozen=True)
class BinomialMatrixSpec:
    """Parameters (A, B_1..B_n) of M = [C(A, B_j - i)]_{i,j=1..n}."""

    A: int
    B: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "B", tuple(int(b) for b in self.B))
        if self.A < 0:
            raise InvalidInput(f"A must be nonnegative, got {self.A}")
        if len(set(self.B)) != len(self.B):
            raise InvalidInput(f"B values must be pairwise distinct: {self.B}")
        hi = self.A + self.n
        for b in self.B:
            if not 1 <= b <= hi:
                raise InvalidInput(f"B value {b} outside [1, A+n] = [1, {hi}]")

    @property
    def n(self) -> int:
        return len(self.B)

    @classmethod
    def half_hexagon(cls, n: int) -> "BinomialMatrixSpec":
        return cls(n + 1, tuple(2 * j for j in range(1, n + 1)))


def build_M(spec: BinomialMatrixSpec) -> ExactMatrix:
    n, A, B = spec.n, spec.A, spec.B
    return ExactMatrix.from_rows(
        [[binomial(A, B[j - 1] - i) for j in range(1, n + 1)] for i in range(1, n + 1)]
    )


def _alternating_sign(k: int, j: int) -> int:
    return -1 if (k + j) % 2 else 1


def closed_form_inverse(
    spec: BinomialMatrixSpec, *, _sign: Callable[[int, int], int] = _alternating_sign
) -> ExactMatrix:
    """Evaluate the closed-form inverse of ``build_M(spec)`` term by term.

    Entry (i, j) is::

        C(A+n-1, B_i-1)^-1 * sum_{k=1..j} C(A+n-1, k-1) C(A-1+j-k, j-k) (-1)^(k+j)
                                           * prod_{l != i} (k - B_l) / (B_i - B_l)

    ``C(A-1+j-k, j-k)`` is evaluated as ``multichoose(A, j-k)`` so that A = 0
    keeps the C(-1, 0) = 1 term.  ``_sign`` exists only for fault-injection
    self-tests.
    """
    n, A, B = spec.n, spec.A, spec.B
    top = A + n - 1
    rows = []
    for i in range(1, n + 1):
        b_i = B[i - 1]
        others = [B[l - 1] for l in range(1, n + 1) if l != i]
        denom = binomial(top, b_i - 1)
        for b_l in others:
            denom *= b_i - b_l
        if denom == 0:
            raise InvalidInput(f"closed form undefined for A={A}, B={B}")
        row = []
        for j in range(1, n + 1):
            numer = 0
            for k in range(1, j + 1):
                term = binomial(top, k - 1) * multichoose(A, j - k) * _sign(k, j)
                if term == 0:
                    continue
                for b_l in others:
                    term *= k - b_l
                numer += term
            row.append(Fraction(numer, denom))
        rows.append(row)
    return ExactMatrix.from_rows(rows)


def _integer_rows(m) -> List[List[int]]:
    rows = m.rows if isinstance(m, ExactMatrix) else m
    out = []
    for row in rows:
        scale = lcm_of_denominators(row)
        out.append([int(Fraction(v) * scale) for v in row])
    return out


def bareiss_det(m) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Accepts an :class:`ExactMatrix` or a list of rows of ints/Fractions.
    Rational rows are scaled to integers first and the scale divided back out.
    """
    rows = m.rows if isinstance(m, ExactMatrix) else [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InvalidInput("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = 1
    for row in rows:
        scale *= lcm_of_denominators(row)
    a = _integer_rows(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale)


def gauss_jordan_inverse(m: ExactMatrix) -> ExactMatrix:
    """Inverse by rational Gauss-Jordan elimination (the generic oracle)."""
    if not m.is_square:
        raise InvalidInput("inverse of a non-square matrix")
    n = m.nrows
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.rows)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise InvalidInput("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [v / piv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return ExactMatrix.from_rows(row[n:] for row in aug)


def binomial_L_matrix(A: int, L: Sequence[int]) -> ExactMatrix:
    """[C(A, L_i + j)]_{i,j=1..n}."""
    n = len(L)
    return ExactMatrix.from_rows(
        [[binomial(A, L[i - 1] + j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    )


def det_binomial_L(A: int, L: Sequence[int], n: int) -> Fraction:
    """Product formula for det[C(A, L_i + j)]_{i,j=1..n}::

        prod_{i<j} (L_i - L_j) * prod_i (A+i-1)!  /  (prod_i (L_i+n)! * prod_i (A-L_i-1)!)
    """
    if len(L) != n:
        raise InvalidInput(f"expected {n} L values, got {len(L)}")
    if A < 0:
        raise InvalidInput(f"A must be nonnegative, got {A}")
    numer = 1
    for i in range(n):
        for j in range(i + 1, n):
            numer *= L[i] - L[j]
    denom = 1
    for i in range(1, n + 1):
        l_i = L[i - 1]
        if l_i + n < 0 or A - l_i - 1 < 0:
            raise InvalidInput(f"factorial argument undefined for L_{i}={l_i}, A={A}, n={n}")
        numer *= factorial(A + i - 1)
        denom *= factorial(l_i + n) * factorial(A - l_i - 1)
    return Fraction(numer, denom)


def _check_cofactor_args(n: int, s: int, bbar: Sequence[int]) -> None:
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    if not 1 <= s <= n:
        raise InvalidInput(f"row index s={s} outside [1, {n}]")
    if len(bbar) != n - 1:
        raise InvalidInput(f"expected {n - 1} remaining B values, got {len(bbar)}")


def cofactor_P(n: int, s: int, A: int, bbar: Sequence[int]) -> int:
    """Polynomial part P_{n,s}(A, bbar) of the minor of M with row s struck.

    Evaluates::

        Delta(bbar) * prod_{r=1..n-2} (A+r)^(n-1-r)
            * sum_{j=0..s-1} (-1)^j C(A+s-2-j, s-1-j) C(n+A-1, j) prod_l (bbar_l - 1 - j)

    where Delta(v) = prod_{i<j} (v_j - v_i) and C(A+s-2-j, s-1-j) is taken as
    ``multichoose(A, s-1-j)``.  Combined with :func:`cofactor_prefactor` this
    reproduces :func:`struck_minor` exactly.
    """
    _check_cofactor_args(n, s, bbar)
    if A < 0:
        raise InvalidInput(f"A must be nonnegative, got {A}")
    front = vandermonde(bbar)
    for r in range(1, n - 1):
        front *= (A + r) ** (n - 1 - r)
    total = 0
    for j in range(s):
        term = multichoose(A, s - 1 - j) * binomial(n + A - 1, j)
        for b in bbar:
            term *= b - 1 - j
        total += -term if j % 2 else term
    return front * total


def cofactor_prefactor(n: int, A: int, bbar: Sequence[int]) -> Fraction:
    """prod_i A! / ((bbar_i - 1)! (A - bbar_i + n)!), pulled out of every column."""
    out = Fraction(1)
    for b in bbar:
        if b < 1 or A - b + n < 0:
            raise InvalidInput(f"B value {b} outside [1, A+n] = [1, {A + n}]")
        out *= Fraction(factorial(A), factorial(b - 1) * factorial(A - b + n))
    return out


def struck_minor(n: int, s: int, A: int, bbar: Sequence[int]) -> Fraction:
    """det[C(A, bbar_j - i - [i >= s])]_{i,j=1..n-1}: M without row s and one column."""
    _check_cofactor_args(n, s, bbar)
    rows = [
        [binomial(A, bbar[j - 1] - i - (1 if i >= s else 0)) for j in range(1, n)]
        for i in range(1, n)
    ]
    return bareiss_det(rows)


def lagrange_identity_sides(A: int, B: Sequence[int], alpha: int, k: int) -> Tuple[Fraction, Fraction]:
    """Both sides of the interpolation identity that collapses M @ M^-1.

    LHS = sum_beta C(A+n-1, B_beta-1)^-1 C(A, B_beta-alpha) prod_{i != beta} (k-B_i)/(B_beta-B_i)
    RHS = C(A+n-1, k-1)^-1 C(A, k-alpha)

    The RHS shift is taken in the row index ``alpha``.
    """
    spec = BinomialMatrixSpec(A, tuple(B))
    n = spec.n
    if not 1 <= alpha <= n:
        raise InvalidInput(f"alpha={alpha} outside [1, {n}]")
    top = A + n - 1
    rhs_denom = binomial(top, k - 1) if k >= 1 else 0
    if rhs_denom == 0:
        raise InvalidInput(f"k={k} outside [1, A+n] = [1, {A + n}]")
    lhs = Fraction(0)
    for beta in range(1, n + 1):
        b_beta = spec.B[beta - 1]
        value = binomial(A, b_beta - alpha)
        if value == 0:
            continue
        numer, denom = value, binomial(top, b_beta - 1)
        for i in range(1, n + 1):
            if i != beta:
                numer *= k - spec.B[i - 1]
                denom *= b_beta - spec.B[i - 1]
        lhs += Fraction(numer, denom)
    rhs = Fraction(binomial(A, k - alpha), rhs_denom)
    return lhs, rhs
