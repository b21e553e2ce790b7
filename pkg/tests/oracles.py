"""Brute-force oracles kept independent of the package code paths they check."""
from fractions import Fraction
from itertools import permutations, product
from math import comb


def C(m, k):
    return comb(m, k) if 0 <= k <= m else 0


def perm_sign(p):
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= rows[i][p[i]]
            if not term:
                break
        total += term
    return total


def cramer_inverse(rows):
    n = len(rows)
    det = leibniz_det(rows)
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[a][b] for b in range(n) if b != j] for a in range(n) if a != i]
            inv[j][i] = (-1) ** (i + j) * leibniz_det(minor) / det
    return inv


def brute_configurations(n, N, ends):
    """All nonintersecting families, by trying every step sequence for every walker."""
    walks = []
    for i in range(1, n + 1):
        options = []
        for steps in product((0, 1), repeat=N):
            pos = [i]
            for st in steps:
                pos.append(pos[-1] + st)
            if pos[-1] == ends[i - 1]:
                options.append(pos)
        walks.append(options)
    out = []
    for family in product(*walks):
        if all(family[i][t] < family[i + 1][t] for i in range(n - 1) for t in range(N + 1)):
            out.append(tuple(tuple(family[i][t] for i in range(n)) for t in range(N + 1)))
    return sorted(out, key=lambda c: [x for row in c for x in row])


def brute_probability(configs, points):
    hits = sum(1 for c in configs if all(x in c[t] for t, x in points))
    return Fraction(hits, len(configs))
