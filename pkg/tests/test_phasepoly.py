"""Exact-layer unit tests: frozen small cases and independent oracles."""

import random
from fractions import Fraction
from math import comb

import pytest

from starq import (
    CRat,
    HbarSeries,
    ParseError,
    PhasePoly,
    bidiff_power,
    compose_linear,
    is_symplectic,
    moyal_bracket,
    moyal_star,
    parse_expression,
    poisson_bracket,
    star_commutator,
    symplectic_equivariance_residual,
)
from conftest import random_poly

Q = PhasePoly.q()
P = PhasePoly.p()
HB = PhasePoly.hbar()
I = CRat(0, 1)


def bidiff_oracle(f, g, k):
    """Closed binomial form of the k-th bidifferential, n=1 only."""
    assert f.n == g.n == 1
    acc = PhasePoly.zero(1)
    for j in range(k + 1):
        df = f
        for _ in range(k - j):
            df = df.diff_q()
        for _ in range(j):
            df = df.diff_p()
        dg = g
        for _ in range(j):
            dg = dg.diff_q()
        for _ in range(k - j):
            dg = dg.diff_p()
        acc = acc + (df * dg) * ((-1) ** j * comb(k, j))
    return acc


def star_oracle(f, g, sign):
    """Star product assembled directly from the binomial oracle."""
    kmax = min(f.degree(), g.degree())
    acc = PhasePoly.zero(f.n)
    fact = 1
    for k in range(kmax + 1):
        if k:
            fact *= k
        coeff = (CRat(0, sign) * Fraction(1, 2)) ** k * Fraction(1, fact)
        term = bidiff_oracle(f, g, k) * coeff
        if k:
            term = term * PhasePoly.hbar(1, k)
        acc = acc + term
    return acc


class TestPoissonBracket:
    def test_canonical_pair(self):
        assert poisson_bracket(Q, P) == 1

    def test_antisymmetry_diagonal(self):
        f = Q * Q * P + P * 3
        assert poisson_bracket(f, f).is_zero

    def test_squares(self):
        assert poisson_bracket(Q ** 2, P ** 2) == 4 * Q * P

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            poisson_bracket(Q, PhasePoly.p(1, n=2))

    def test_jacobi_random(self):
        rng = random.Random(11)
        for _ in range(10):
            f = random_poly(rng, max_degree=4, n_terms=3)
            g = random_poly(rng, max_degree=4, n_terms=3)
            h = random_poly(rng, max_degree=4, n_terms=3)
            s = (poisson_bracket(f, poisson_bracket(g, h))
                 + poisson_bracket(g, poisson_bracket(h, f))
                 + poisson_bracket(h, poisson_bracket(f, g)))
            assert s.is_zero

    def test_leibniz_random(self):
        rng = random.Random(12)
        for _ in range(10):
            f = random_poly(rng, max_degree=3, n_terms=3)
            g = random_poly(rng, max_degree=3, n_terms=3)
            h = random_poly(rng, max_degree=3, n_terms=3)
            assert poisson_bracket(f, g * h) == \
                poisson_bracket(f, g) * h + g * poisson_bracket(f, h)


class TestBidiffPower:
    def test_squares_order_two(self):
        assert bidiff_power(Q ** 2, P ** 2, 2) == 4

    def test_order_zero_is_product(self):
        f = Q ** 2 + P
        g = Q * P
        assert bidiff_power(f, g, 0) == f * g

    def test_degree_exhaustion(self):
        assert bidiff_power(Q, P, 2).is_zero

    def test_matches_binomial_oracle(self):
        rng = random.Random(13)
        for _ in range(8):
            f = random_poly(rng, max_degree=5, n_terms=4)
            g = random_poly(rng, max_degree=5, n_terms=4)
            for k in range(6):
                assert bidiff_power(f, g, k) == bidiff_oracle(f, g, k)

    def test_two_dof_splits(self):
        # distinct indices are independent pairs
        q1 = PhasePoly.q(1, 2)
        p1 = PhasePoly.p(1, 2)
        q2 = PhasePoly.q(2, 2)
        p2 = PhasePoly.p(2, 2)
        assert poisson_bracket(q1, p2).is_zero
        assert poisson_bracket(q1 * q2, p1 * p2) == q2 * p2 + q1 * p1
        assert bidiff_power(q1 * q2, p1 * p2, 2) == 2


class TestMoyalStar:
    def test_q_star_p(self):
        expected = Q * P - HB * I * Fraction(1, 2)
        assert moyal_star(Q, P) == expected

    def test_unit(self):
        f = random_poly(random.Random(14), max_degree=4)
        one = PhasePoly.one()
        assert moyal_star(one, f) == f
        assert moyal_star(f, one) == f

    def test_squares(self):
        expected = Q ** 2 * P ** 2 - Q * P * HB * I * 2 \
            - HB ** 2 * Fraction(1, 2)
        assert moyal_star(Q ** 2, P ** 2) == expected

    def test_sign_flag_conjugates(self):
        assert moyal_star(Q, P, sign=+1) == Q * P + HB * I * Fraction(1, 2)

    def test_matches_series_oracle_both_signs(self):
        rng = random.Random(15)
        for _ in range(6):
            f = random_poly(rng, max_degree=5, n_terms=4)
            g = random_poly(rng, max_degree=5, n_terms=4)
            for sign in (-1, +1):
                assert moyal_star(f, g, sign) == star_oracle(f, g, sign)

    def test_commutator_and_bracket(self):
        assert star_commutator(Q, P) == -1 * I * HB
        assert moyal_bracket(Q, P) == 1
        assert moyal_bracket(Q ** 2, P ** 2) == 4 * Q * P
        f = random_poly(random.Random(16), max_degree=4)
        assert moyal_bracket(f, f).is_zero

    def test_bracket_definition_both_signs(self):
        rng = random.Random(17)
        for sign in (-1, +1):
            f = random_poly(rng, max_degree=4, n_terms=4)
            g = random_poly(rng, max_degree=4, n_terms=4)
            comm = star_commutator(f, g, sign)
            assert HB * moyal_bracket(f, g, sign) * CRat(0, sign) == comm

    def test_quadratic_collapses_to_poisson(self):
        rng = random.Random(18)
        h = Q ** 2 + P ** 2
        for _ in range(5):
            f = random_poly(rng, max_degree=5, n_terms=4)
            assert moyal_bracket(h, f) == poisson_bracket(h, f)


class TestSymplectic:
    def test_identity(self):
        S = [[1, 0], [0, 1]]
        assert symplectic_equivariance_residual(Q ** 2, P, S) == 0.0

    def test_rotation(self):
        S = [[0, 1], [-1, 0]]  # (q,p) -> (p,-q)
        assert is_symplectic(S, 1)
        assert compose_linear(Q, S) == P
        assert compose_linear(P, S) == -1 * Q
        assert symplectic_equivariance_residual(Q, P, S) == 0.0

    def test_shear(self):
        S = [[1, 1], [0, 1]]  # q -> q + p
        assert symplectic_equivariance_residual(Q ** 2, Q * P, S) == 0.0

    def test_rejects_non_symplectic(self):
        with pytest.raises(ValueError):
            symplectic_equivariance_residual(Q, P, [[2, 0], [0, 1]])


class TestHbarSeries:
    def test_truncation_discards_high_orders(self):
        s = HbarSeries.from_poly(Q + HB ** 3 * 5, order=2)
        assert s.to_poly() == Q

    def test_star_hbar0_is_pointwise(self):
        f = HbarSeries.from_poly(Q ** 2 + P, order=3)
        g = HbarSeries.from_poly(Q * P, order=3)
        prod = moyal_star(f, g)
        assert prod.coefficients[0] == ((Q ** 2 + P) * (Q * P)).hbar_coefficient(0)

    def test_series_star_matches_truncated_poly_star(self):
        rng = random.Random(19)
        f = random_poly(rng, max_degree=4, with_hbar=True)
        g = random_poly(rng, max_degree=4, with_hbar=True)
        N = 3
        sf = HbarSeries.from_poly(f, N)
        sg = HbarSeries.from_poly(g, N)
        full = moyal_star(sf.to_poly(), sg.to_poly())
        assert moyal_star(sf, sg) == HbarSeries.from_poly(full, N)

    def test_bracket_keeps_order(self):
        sf = HbarSeries.from_poly(Q ** 2, 2)
        sg = HbarSeries.from_poly(P ** 2, 2)
        br = moyal_bracket(sf, sg)
        assert br.order == 2
        assert br.coefficients[0] == 4 * Q * P

    def test_order_mismatch_raises(self):
        with pytest.raises(ValueError):
            moyal_star(HbarSeries.from_poly(Q, 1), HbarSeries.from_poly(P, 2))

    def test_mul_truncates(self):
        a = HbarSeries.from_poly(PhasePoly.one() + HB, 1)
        out = a * a
        assert out.to_poly() == PhasePoly.one() + 2 * HB


class TestSerialization:
    def test_canonical_example(self):
        f = PhasePoly(1, {(2, 1, 1): (3, 0)}, 2)
        assert f.to_text() == "(3/2+0i)*q1^2*p1^1*hbar^1"

    def test_round_trip_random(self):
        # n must be passed back in: a dimension-2 polynomial whose terms do
        # not mention q2/p2 serializes without them
        rng = random.Random(20)
        for n in (1, 2):
            for _ in range(6):
                f = random_poly(rng, n=n, max_degree=5, n_terms=4, with_hbar=True)
                assert PhasePoly.from_text(f.to_text(), n=n) == f

    def test_zero(self):
        assert PhasePoly.zero().to_text() == "0"
        assert PhasePoly.from_text("0").is_zero

    def test_series_round_trip(self):
        s = HbarSeries.from_poly(Q * P + HB * 7, 2)
        assert HbarSeries.from_text(s.to_text()) == s

    def test_parser_expressions(self):
        assert parse_expression("star(q, p)") == moyal_star(Q, P)
        assert parse_expression("mbracket(q^2, p^2)") == 4 * Q * P
        assert parse_expression("(1/2)*q^2 - i*p") == \
            Q ** 2 * Fraction(1, 2) - P * I
        assert parse_expression("q2*p1").n == 2

    def test_parser_errors_carry_position(self):
        with pytest.raises(ParseError) as err:
            parse_expression("q + ?")
        assert err.value.position == 4
        with pytest.raises(ParseError):
            parse_expression("q / p")
        with pytest.raises(ParseError):
            parse_expression("q ^ p")
        with pytest.raises(ParseError):
            parse_expression("qq + 1")


class TestEvaluateAndSubs:
    def test_subs_hbar(self):
        f = Q * P - HB * I * Fraction(1, 2)
        g = f.subs_hbar(Fraction(1, 3))
        assert g == Q * P - PhasePoly.const(CRat(0, Fraction(1, 6)))

    def test_evaluate_matches_floats(self):
        f = Q ** 2 * P - HB * 2
        val = f.evaluate(1.5, -2.0, hbar=0.5)
        assert abs(val - (1.5 ** 2 * -2.0 - 1.0)) < 1e-14

    def test_evaluate_grid_shape(self):
        import numpy as np

        f = Q + P * I
        qs = np.linspace(-1, 1, 5)[:, None]
        ps = np.linspace(-1, 1, 7)[None, :]
        out = f.evaluate(qs, ps)
        assert out.shape == (5, 7)
        assert abs(out[0, 0] - (-1 - 1j)) < 1e-14
