"""Randomised and exhaustive consistency sweeps run by ``halfhex verify``.

Every case is exact, so a reported counterexample can be replayed verbatim.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional

from . import binomial_matrix as bm
from .ensemble import (
    EnsembleSpec,
    OccupancyIndex,
    all_queries,
    configuration_probability,
    count_lgv,
    enumerate_configurations,
)
from .kernel import KernelContext, correlation, em_kernel, general_kernel, halfhex_kernel


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    counterexample: Optional[dict] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> dict:
        out = {"suite": self.name, "passed": self.passed, "cases": self.cases,
               "seconds": round(self.seconds, 3)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class VerifyOptions:
    n_max: int = 6
    count_n_max: int = 30
    inverse_specs: int = 500
    inverse_n_max: int = 12
    inverse_a_max: int = 20
    lemma_cases: int = 10_000
    det_cases: int = 200
    cofactor_draws: int = 5
    general_ensembles: List[EnsembleSpec] = field(default_factory=lambda: list(GENERAL_ENSEMBLES))
    seed: int = 0
    inverse: Callable = bm.closed_form_inverse

    @classmethod
    def quick(cls, n_max: int = 3, seed: int = 0) -> "VerifyOptions":
        return cls(
            n_max=n_max,
            count_n_max=max(n_max, 10),
            inverse_specs=60,
            inverse_n_max=max(n_max, 6),
            inverse_a_max=10,
            lemma_cases=1000,
            det_cases=50,
            cofactor_draws=2,
            general_ensembles=list(GENERAL_ENSEMBLES[:2]),
            seed=seed,
        )


# assorted non-half-hexagon ensembles, each with at most 10^4 configurations
GENERAL_ENSEMBLES = (
    EnsembleSpec(2, 4, (3, 5)),
    EnsembleSpec(2, 2, (2, 3)),
    EnsembleSpec(3, 3, (2, 4, 5)),
    EnsembleSpec(3, 6, (4, 6, 9)),
    EnsembleSpec(2, 8, (5, 8)),
    EnsembleSpec(4, 5, (3, 5, 8, 9)),
    EnsembleSpec(3, 5, (3, 6, 8)),
    EnsembleSpec(4, 3, (2, 3, 5, 7)),
    EnsembleSpec(1, 5, (3,)),
)


def random_binomial_spec(rng: random.Random, n_max: int, a_max: int) -> bm.BinomialMatrixSpec:
    n = rng.randint(1, n_max)
    A = rng.randint(0, a_max)
    B = rng.sample(range(1, A + n + 1), n)
    return bm.BinomialMatrixSpec(A, tuple(B))


def _run(name: str, body: Callable[[SuiteResult], None]) -> SuiteResult:
    result = SuiteResult(name)
    start = time.perf_counter()
    body(result)
    result.seconds = time.perf_counter() - start
    return result


def tiling_count_suite(opts: VerifyOptions) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        for n in range(1, opts.count_n_max + 1):
            res.cases += 1
            det = bm.bareiss_det(bm.build_M(bm.BinomialMatrixSpec.half_hexagon(n)))
            if det != 2 ** (n * (n + 1) // 2):
                res.counterexample = {"n": n, "det": str(det)}
                return
    return _run("tiling_count", body)


def inverse_suite(opts: VerifyOptions) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        rng = random.Random(opts.seed)
        for _ in range(opts.inverse_specs):
            spec = random_binomial_spec(rng, opts.inverse_n_max, opts.inverse_a_max)
            m, inv = bm.build_M(spec), opts.inverse(spec)
            eye = bm.identity(spec.n)
            res.cases += 1
            if m @ inv != eye or inv @ m != eye:
                res.counterexample = {"A": spec.A, "B": list(spec.B)}
                return
    return _run("inverse_identity", body)


def lemma_suite(opts: VerifyOptions) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        cases = [
            (A, B, alpha, k)
            for n in range(1, 6)
            for A in range(0, 9)
            for B in combinations(range(1, A + n + 1), n)
            for alpha in range(1, n + 1)
            for k in range(1, A + n + 1)
        ]
        if len(cases) > opts.lemma_cases:
            cases = random.Random(opts.seed).sample(cases, opts.lemma_cases)
        for A, B, alpha, k in cases:
            res.cases += 1
            lhs, rhs = bm.lagrange_identity_sides(A, B, alpha, k)
            if lhs != rhs:
                res.counterexample = {"A": A, "B": list(B), "alpha": alpha, "k": k}
                return
    return _run("lagrange_lemma", body)


def random_L(rng: random.Random, A: int, n: int) -> List[int]:
    return [rng.randint(-n, A - 1) for _ in range(n)]


def det_formula_suite(opts: VerifyOptions) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        rng = random.Random(opts.seed)
        for _ in range(opts.det_cases):
            n = rng.randint(1, 5)
            A = rng.randint(1, 12)
            L = random_L(rng, A, n)
            res.cases += 1
            if bm.det_binomial_L(A, L, n) != bm.bareiss_det(bm.binomial_L_matrix(A, L)):
                res.counterexample = {"A": A, "L": L, "n": n}
                return
    return _run("det_formula", body)


def cofactor_suite(opts: VerifyOptions) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        rng = random.Random(opts.seed)
        for n in range(1, opts.n_max + 1):
            for s in range(1, n + 1):
                for _ in range(opts.cofactor_draws):
                    A = rng.randint(0, 10)
                    bbar = rng.sample(range(1, A + n + 1), n - 1)
                    res.cases += 1
                    lhs = bm.struck_minor(n, s, A, bbar)
                    rhs = bm.cofactor_prefactor(n, A, bbar) * bm.cofactor_P(n, s, A, bbar)
                    if lhs != rhs:
                        res.counterexample = {"n": n, "s": s, "A": A, "bbar": bbar}
                        return
    return _run("cofactor_formula", body)


def kernel_agreement_suite(opts: VerifyOptions) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        for n in range(1, opts.n_max + 1):
            spec = EnsembleSpec.half_hexagon(n)
            ctx = KernelContext.build(spec)
            positions = range(-1, 2 * n + 2)
            for r in spec.interior_times:
                for s in spec.interior_times:
                    for x in positions:
                        for y in positions:
                            res.cases += 1
                            a = em_kernel(ctx, r, x, s, y)
                            if not a == general_kernel(spec, r, x, s, y) == halfhex_kernel(n, r, x, s, y):
                                res.counterexample = {"n": n, "r": r, "x": x, "s": s, "y": y}
                                return
            for t in spec.interior_times:
                res.cases += 1
                total = sum(em_kernel(ctx, t, x, t, x) for x in positions)
                if total != n:
                    res.counterexample = {"n": n, "t": t, "sum": str(total)}
                    return
    return _run("kernel_agreement", body)


def kernel_enumeration_suite(opts: VerifyOptions) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        specs = [EnsembleSpec.half_hexagon(n) for n in range(1, min(opts.n_max, 3) + 1)]
        specs += list(opts.general_ensembles)
        for spec in specs:
            ctx = KernelContext.build(spec)
            index = OccupancyIndex.from_spec(spec, cap=10**4)
            for query in all_queries(spec, 3):
                res.cases += 1
                if correlation(ctx, query) != index.probability(query):
                    res.counterexample = {"spec": spec.to_dict(), "query": [list(p) for p in query]}
                    return
    return _run("kernel_vs_enumeration", body)


def sampler_suite(opts: VerifyOptions) -> SuiteResult:
    def body(res: SuiteResult) -> None:
        for n in range(1, min(opts.n_max, 3) + 1):
            spec = EnsembleSpec.half_hexagon(n)
            configs = enumerate_configurations(spec)
            target = Fraction(1, count_lgv(spec))
            for config in configs:
                res.cases += 1
                if configuration_probability(spec, config) != target:
                    res.counterexample = {"n": n, "config": [list(r) for r in config.positions]}
                    return
    return _run("sampler_exactness", body)


SUITES: Dict[str, Callable[[VerifyOptions], SuiteResult]] = {
    "tiling_count": tiling_count_suite,
    "inverse_identity": inverse_suite,
    "lagrange_lemma": lemma_suite,
    "det_formula": det_formula_suite,
    "cofactor_formula": cofactor_suite,
    "kernel_agreement": kernel_agreement_suite,
    "kernel_vs_enumeration": kernel_enumeration_suite,
    "sampler_exactness": sampler_suite,
}


def faulty_inverse(spec: bm.BinomialMatrixSpec) -> bm.ExactMatrix:
    """Closed-form inverse with the k = 1 sign flipped; verify must reject it."""
    def sign(k: int, j: int) -> int:
        base = -1 if (k + j) % 2 else 1
        return -base if k == 1 else base

    return bm.closed_form_inverse(spec, _sign=sign)


def run_all(opts: VerifyOptions, names: Optional[List[str]] = None) -> List[SuiteResult]:
    return [SUITES[name](opts) for name in (names or list(SUITES))]
