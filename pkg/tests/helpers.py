"""Random test objects shared by several test modules."""

from __future__ import annotations

import random

from parcalc.complexes import Complex, direct_sum, two_term, unit_complex, zero_complex
from parcalc.laurent import LaurentPoly, LaurentRing, identity, mat_mul
from parcalc.weil_deligne import mat_inverse


def random_entry(ring, rng: random.Random):
    if isinstance(ring, LaurentRing):
        lo = rng.randint(-1, 1)
        return LaurentPoly(ring.ctx, {lo + k: rng.randint(-2, 2) for k in range(rng.randint(1, 3))})
    return ring.coerce(rng.randint(-3, 3))


def random_unimodular(ring, rng: random.Random, n: int):
    L, U = identity(ring, n), identity(ring, n)
    for i in range(n):
        for j in range(i):
            L[i][j] = ring.coerce(rng.randint(-1, 1))
            U[j][i] = random_entry(ring, rng) if rng.random() < 0.3 else ring.coerce(rng.randint(-1, 1))
    return mat_mul(ring, L, U)


def random_complex(ring, rng: random.Random, pieces: int = 3) -> Complex:
    """Direct sum of two-term and one-term pieces, then a random change of basis
    in every degree."""
    X = zero_complex(ring)
    for _ in range(rng.randint(1, pieces)):
        a = rng.randint(-2, 2)
        if rng.random() < 0.3:
            X = direct_sum(X, unit_complex(ring, a))
        else:
            X = direct_sum(X, two_term(ring, random_entry(ring, rng), a))
    P = {i: random_unimodular(ring, rng, X.rank(i)) for i in X.degrees()}
    diffs = {}
    for i, M in X.diffs.items():
        diffs[i] = mat_mul(ring, mat_mul(ring, P[i + 1], M), mat_inverse(ring, P[i]))
    return Complex(ring, X.terms, diffs)
