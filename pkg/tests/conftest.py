"""Shared helpers for the test suite."""

import random
from fractions import Fraction

from starq import PhasePoly


def random_poly(rng: random.Random, n: int = 1, max_degree: int = 6,
                n_terms: int = 5, with_hbar: bool = False,
                real: bool = False) -> PhasePoly:
    """Sparse random polynomial with small integer coefficients."""
    acc = PhasePoly.zero(n)
    for _ in range(n_terms):
        exps = []
        budget = rng.randint(0, max_degree)
        for _ in range(2 * n):
            e = rng.randint(0, budget)
            exps.append(e)
            budget -= e
        h = rng.randint(0, 2) if with_hbar else 0
        re = rng.randint(-9, 9)
        im = 0 if real else rng.randint(-9, 9)
        if re == 0 and im == 0:
            re = 1
        acc = acc + PhasePoly(n, {tuple(exps) + (h,): (re, im)},
                              rng.randint(1, 4))
    return acc


def random_symplectic(rng: random.Random, n: int = 1, steps: int = 4):
    """Random product of elementary symplectic shears and swaps, exact entries."""
    m = 2 * n

    def identity():
        return [[Fraction(int(r == c)) for c in range(m)] for r in range(m)]

    def matmul(A, B):
        return [[sum(A[r][k] * B[k][c] for k in range(m)) for c in range(m)]
                for r in range(m)]

    S = identity()
    for _ in range(steps):
        E = identity()
        i = rng.randrange(n)
        t = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        kind = rng.randrange(3)
        if kind == 0:
            E[i][n + i] = t        # q_i -> q_i + t p_i
        elif kind == 1:
            E[n + i][i] = t        # p_i -> p_i + t q_i
        else:
            E[i][i] = Fraction(0)  # (q_i, p_i) -> (p_i, -q_i)
            E[i][n + i] = Fraction(1)
            E[n + i][i] = Fraction(-1)
            E[n + i][n + i] = Fraction(0)
        S = matmul(S, E)
    return S
