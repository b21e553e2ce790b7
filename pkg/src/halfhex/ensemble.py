"""Nonintersecting stay/step-right walkers.

``n`` walkers start at positions 1..n at time 0, each takes ``N`` steps of
size 0 or +1, never share a site, and end at ``y_1 < ... < y_n``.  These
families are in bijection with lozenge tilings; the order-n Novak
half-hexagon is ``N = n + 1``, ``y_i = 2i``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .binomial_matrix import BinomialMatrixSpec, bareiss_det, closed_form_inverse
from .errors import CapExceeded, InvalidInput
from .exactnum import binomial

DEFAULT_CAP = 10**6

Slice = Tuple[int, ...]


class SpaceTimePoint(NamedTuple):
    t: int
    x: int


@dataclass(frozen=True)
class EnsembleSpec:
    n: int
    N: int
    ends: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(int(v) for v in self.ends))
        if self.n < 1:
            raise InvalidInput(f"need at least one walker, got n={self.n}")
        if self.N < 0:
            raise InvalidInput(f"number of steps must be nonnegative, got N={self.N}")
        if len(self.ends) != self.n:
            raise InvalidInput(f"expected {self.n} end positions, got {len(self.ends)}")
        if any(a >= b for a, b in zip(self.ends, self.ends[1:])):
            raise InvalidInput(f"end positions must be strictly increasing: {self.ends}")
        for i, y in enumerate(self.ends, start=1):
            if not 0 <= y - i <= self.N:
                raise InvalidInput(
                    f"walker {i} cannot travel from {i} to {y} in {self.N} steps"
                )

    @classmethod
    def half_hexagon(cls, n: int) -> "EnsembleSpec":
        return cls(n, n + 1, tuple(2 * i for i in range(1, n + 1)))

    @property
    def starts(self) -> Slice:
        return tuple(range(1, self.n + 1))

    @property
    def interior_times(self) -> range:
        return range(1, self.N)

    def matrix_spec(self) -> BinomialMatrixSpec:
        """Parameters of the LGV matrix [C(N, y_j - i)]."""
        return BinomialMatrixSpec(self.N, self.ends)

    def walker_range(self, i: int, t: int) -> Tuple[int, int]:
        """Positions walker ``i`` (1-based) can occupy at time ``t``."""
        y = self.ends[i - 1]
        return max(i, y - (self.N - t)), min(i + t, y)

    def reachable(self, t: int) -> List[int]:
        """Sorted sites occupied at time ``t`` by at least one configuration."""
        sites = set()
        for i in range(1, self.n + 1):
            lo, hi = self.walker_range(i, t)
            sites.update(range(lo, hi + 1))
        return sorted(sites)

    def to_dict(self) -> dict:
        return {"n": self.n, "N": self.N, "ends": list(self.ends)}


@dataclass(frozen=True)
class Configuration:
    """Space-time trajectory: ``positions[t][i]`` is walker i+1 at time t."""

    positions: Tuple[Slice, ...]

    @property
    def N(self) -> int:
        return len(self.positions) - 1

    @property
    def n(self) -> int:
        return len(self.positions[0])

    def infer_spec(self) -> EnsembleSpec:
        return EnsembleSpec(self.n, self.N, self.positions[-1])

    def occupied(self) -> set:
        return {SpaceTimePoint(t, x) for t, row in enumerate(self.positions) for x in row}

    def flat(self) -> Tuple[int, ...]:
        return tuple(x for row in self.positions for x in row)


def check_configuration(config: Configuration, spec: Optional[EnsembleSpec] = None) -> None:
    """Raise InvalidInput unless ``config`` is a valid member of ``spec``'s ensemble."""
    if not config.positions:
        raise InvalidInput("empty configuration")
    spec = spec or config.infer_spec()
    if config.N != spec.N or any(len(r) != spec.n for r in config.positions):
        raise InvalidInput("configuration shape does not match the ensemble")
    if config.positions[0] != spec.starts:
        raise InvalidInput(f"walkers must start at {spec.starts}")
    if config.positions[-1] != spec.ends:
        raise InvalidInput(f"walkers must end at {spec.ends}")
    for t, row in enumerate(config.positions):
        if any(a >= b for a, b in zip(row, row[1:])):
            raise InvalidInput(f"walkers collide or cross at time {t}: {row}")
    for t in range(spec.N):
        for a, b in zip(config.positions[t], config.positions[t + 1]):
            if b - a not in (0, 1):
                raise InvalidInput(f"illegal step {a}->{b} at time {t}")


def phi(r: int, s: int, x: int, y: int) -> int:
    """Number of stay/step-right paths from (r, x) to (s, y); zero unless r < s."""
    if r >= s:
        return 0
    return binomial(s - r, y - x)


def lgv_matrix(spec: EnsembleSpec) -> List[List[int]]:
    return [[phi(0, spec.N, i, y) for y in spec.ends] for i in spec.starts]


def count_lgv(spec: EnsembleSpec) -> int:
    """Number of nonintersecting configurations, as det[phi(0, N, i, y_j)]."""
    if spec.N == 0:
        return 1
    det = bareiss_det(lgv_matrix(spec))
    assert det.denominator == 1
    return det.numerator


def completions(spec: EnsembleSpec, t: int, current: Sequence[int]) -> int:
    """Number of ways to finish from slice ``current`` at time ``t``."""
    m = spec.N - t
    rows = [[binomial(m, y - x) for y in spec.ends] for x in current]
    return int(bareiss_det(rows))


def _next_slices(spec: EnsembleSpec, t: int, current: Slice) -> Iterator[Slice]:
    """Admissible, still-feasible slices at time t+1, lexicographically."""
    remaining = spec.N - t - 1
    n = spec.n
    chosen: List[int] = []

    def extend(i: int) -> Iterator[Slice]:
        if i == n:
            yield tuple(chosen)
            return
        y = spec.ends[i]
        for step in (0, 1):
            nxt = current[i] + step
            if chosen and nxt <= chosen[-1]:
                continue
            if nxt > y or y - nxt > remaining:
                continue
            chosen.append(nxt)
            yield from extend(i + 1)
            chosen.pop()

    return extend(0)


def enumerate_configurations(spec: EnsembleSpec, cap: int = DEFAULT_CAP) -> List[Configuration]:
    """Every configuration exactly once, in lexicographic order of the flattened array."""
    if cap < 1:
        raise InvalidInput(f"cap must be positive, got {cap}")
    total = count_lgv(spec)
    if total > cap:
        raise CapExceeded(total, cap)
    out: List[Configuration] = []
    path: List[Slice] = [spec.starts]

    def walk(t: int) -> None:
        if t == spec.N:
            if path[-1] == spec.ends:
                out.append(Configuration(tuple(path)))
            return
        for nxt in _next_slices(spec, t, path[-1]):
            path.append(nxt)
            walk(t + 1)
            path.pop()

    walk(0)
    return out


def _check_points(points: Sequence) -> List[SpaceTimePoint]:
    pts = [SpaceTimePoint(*p) for p in points]
    if len(set(pts)) != len(pts):
        raise InvalidInput("query points must be distinct")
    return pts


class OccupancyIndex:
    """Bitset index over an enumerated ensemble for fast empirical correlations."""

    def __init__(self, configs: Sequence[Configuration]):
        self.size = len(configs)
        self._masks: Dict[SpaceTimePoint, int] = {}
        for idx, config in enumerate(configs):
            bit = 1 << idx
            for t, row in enumerate(config.positions):
                for x in row:
                    key = SpaceTimePoint(t, x)
                    self._masks[key] = self._masks.get(key, 0) | bit

    @classmethod
    def from_spec(cls, spec: EnsembleSpec, cap: int = DEFAULT_CAP) -> "OccupancyIndex":
        return cls(enumerate_configurations(spec, cap))

    def hits(self, points: Sequence) -> int:
        mask = (1 << self.size) - 1
        for p in _check_points(points):
            mask &= self._masks.get(p, 0)
            if not mask:
                return 0
        return bin(mask).count("1")

    def probability(self, points: Sequence) -> Fraction:
        return Fraction(self.hits(points), self.size)


def empirical_correlation(
    spec: EnsembleSpec, query: Sequence, cap: int = DEFAULT_CAP
) -> Fraction:
    """Fraction of configurations with a walker at every query point."""
    pts = _check_points(query)
    configs = enumerate_configurations(spec, cap)
    hits = 0
    for config in configs:
        occ = config.occupied()
        if all(p in occ for p in pts):
            hits += 1
    return Fraction(hits, len(configs))


def slice_weights(spec: EnsembleSpec, t: int, current: Sequence[int]) -> Dict[Slice, Fraction]:
    """Conditional law of the slice at time t+1 given ``current`` at time t.

    Each admissible next slice gets weight completions(t+1, next) / completions(t, current).
    """
    if not 0 <= t < spec.N:
        raise InvalidInput(f"time {t} has no successor slice")
    base = completions(spec, t, current)
    if base == 0:
        raise InvalidInput(f"slice {tuple(current)} at time {t} cannot reach the end positions")
    out = {}
    for nxt in _next_slices(spec, t, tuple(current)):
        w = completions(spec, t + 1, nxt)
        if w:
            out[nxt] = Fraction(w, base)
    return out


def _initial_adjugate(spec: EnsembleSpec, det: int) -> List[List[int]]:
    minv = closed_form_inverse(spec.matrix_spec())
    adj = []
    for row in minv.rows:
        scaled = [v * det for v in row]
        assert all(v.denominator == 1 for v in scaled)
        adj.append([int(v) for v in scaled])
    return adj


def sample_with_probability(
    spec: EnsembleSpec, rng: random.Random
) -> Tuple[Configuration, Fraction]:
    """Draw a uniform configuration and return it with its exact sampling probability.

    Slices are drawn one walker at a time.  Row i of the running matrix is
    [C(N-t, y_j - x_i)] until walker i moves, then [C(N-t-1, y_j - x_i')];
    by multilinearity its determinant is the number of completions consistent
    with the choices so far, and colliding choices give equal rows (weight 0).
    The adjugate is carried along with exact rank-one updates, so each choice
    costs O(n^2) integer operations.
    """
    n, N, ends = spec.n, spec.N, spec.ends
    x = list(spec.starts)
    path: List[Slice] = [tuple(x)]
    if N == 0:
        return Configuration(tuple(path)), Fraction(1)
    D = count_lgv(spec)
    if D == 0:
        raise InvalidInput("ensemble has no configurations")
    adj = _initial_adjugate(spec, D)
    prob = Fraction(1)
    for t in range(N):
        m = N - t - 1
        for k in range(n):
            stay = [binomial(m, y - x[k]) for y in ends]
            jump = [binomial(m, y - x[k] - 1) for y in ends]
            col = [adj[j][k] for j in range(n)]
            d_jump = sum(a * b for a, b in zip(jump, col))
            d_stay = sum(a * b for a, b in zip(stay, col))
            assert d_jump + d_stay == D and d_jump >= 0 and d_stay >= 0
            step = 1 if rng.randrange(D) < d_jump else 0
            new_D, dropped = (d_jump, stay) if step else (d_stay, jump)
            prob *= Fraction(new_D, D)
            # row k changes by -dropped; adj' = (new_D * adj + adj[:,k] (dropped^T adj)) / D
            r = [sum(dropped[i] * adj[i][j] for i in range(n) if dropped[i]) for j in range(n)]
            for i in range(n):
                ci = col[i]
                row = adj[i]
                for j in range(n):
                    row[j] = (new_D * row[j] + ci * r[j]) // D
            D = new_D
            x[k] += step
        path.append(tuple(x))
    assert D == 1
    return Configuration(tuple(path)), prob


def sample(spec: EnsembleSpec, seed: int) -> Configuration:
    """Exactly uniform configuration; the same seed always gives the same result."""
    config, _ = sample_with_probability(spec, random.Random(seed))
    return config


def configuration_probability(spec: EnsembleSpec, config: Configuration) -> Fraction:
    """Product of slice conditionals along ``config`` (1/count for a valid one)."""
    check_configuration(config, spec)
    prob = Fraction(1)
    for t in range(spec.N):
        weights = slice_weights(spec, t, config.positions[t])
        prob *= weights.get(config.positions[t + 1], Fraction(0))
    return prob


def format_configuration(config: Configuration) -> str:
    """One row per time slice, walkers separated by spaces."""
    return "\n".join(" ".join(str(x) for x in row) for row in config.positions) + "\n"


def format_configurations(configs: Iterable[Configuration]) -> str:
    return "\n".join(format_configuration(c) for c in configs)


def parse_configurations(text: str) -> List[Configuration]:
    """Inverse of :func:`format_configurations`; records are separated by blank lines."""
    out: List[Configuration] = []
    block: List[Slice] = []
    for raw in text.splitlines() + [""]:
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if block:
                out.append(Configuration(tuple(block)))
                block = []
            continue
        try:
            block.append(tuple(int(tok) for tok in line.split()))
        except ValueError as exc:
            raise InvalidInput(f"bad configuration row: {raw!r}") from exc
    for config in out:
        check_configuration(config)
    return out


def all_queries(spec: EnsembleSpec, max_size: int, margin: int = 1) -> Iterator[Tuple[SpaceTimePoint, ...]]:
    """Every distinct-point query of size 1..max_size at interior times.

    Positions run over the reachable strip widened by ``margin`` on each side.
    """
    sites = []
    for t in spec.interior_times:
        reach = spec.reachable(t)
        for x in range(reach[0] - margin, reach[-1] + margin + 1):
            sites.append(SpaceTimePoint(t, x))
    for size in range(1, max_size + 1):
        yield from combinations(sites, size)
