"""Quantum layer: twist and R-matrix construction, q-commutation
rewriting, RTT/Yang-Baxter residuals, and the semiclassical limit."""

from fractions import Fraction

import pytest

from starq.exactlinalg import identity, mat_eq, mat_mul
from starq.qscalars import HSeries, RatFunc
from starq.sklyanin import GENS, SklyaninPoly, sklyanin_bracket
from starq.slq2 import (
    QPoly,
    QRingCommutative,
    QRingRational,
    QRingSeries,
    build_fhat,
    build_rq,
    explicit_rq,
    nc_normalize,
    qybe_residual,
    quantum_determinant_central,
    rewrite_is_confluent,
    rtt_max_size,
    rtt_residual,
    semiclassical_limit,
    unitarity_witness,
)

RHAT = [
    [0, 0, 0, 0],
    [0, 0, 1, 0],
    [0, -1, 0, 0],
    [0, 0, 0, 0],
]

R_FIRST_ORDER = [
    [1, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 2, 0, 0],
    [0, 0, 0, 1],
]


class TestRewriting:
    def test_da_rule(self):
        ring = QRingRational()
        out = nc_normalize("da", ring)
        assert out.terms == {
            (1, 0, 0, 1): ring.one,
            (0, 1, 1, 0): -ring.qdiff,
        }
        assert out.to_text() == "a*d - (q - q^-1)*b*c"

    def test_ba_rule(self):
        ring = QRingRational()
        out = nc_normalize("ba", ring)
        assert out.terms == {(1, 1, 0, 0): ring.qinv}
        assert out.to_text() == "q^-1*a*b"

    def test_cb_rule(self):
        ring = QRingRational()
        assert nc_normalize("cb", ring) == nc_normalize("bc", ring)

    def test_six_defining_relations(self):
        ring = QRingRational()

        def word(w):
            return nc_normalize(w, ring)

        q = ring.q
        assert (word("ab") - word("ba").scale(q)).is_zero
        assert (word("ac") - word("ca").scale(q)).is_zero
        assert (word("ad") - word("da")
                - word("bc").scale(ring.qdiff)).is_zero
        assert (word("bc") - word("cb")).is_zero
        assert (word("bd") - word("db").scale(q)).is_zero
        assert (word("cd") - word("dc").scale(q)).is_zero

    def test_confluence_up_to_length_four(self):
        assert rewrite_is_confluent(4)

    def test_product_respects_concatenation(self):
        ring = QRingRational()
        words = ["d", "ba", "dc", "dda", "cab", "ddd", "abc"]
        for w1 in words:
            for w2 in words:
                lhs = nc_normalize(w1 + w2, ring)
                rhs = nc_normalize(w1, ring) * nc_normalize(w2, ring)
                assert (lhs - rhs).is_zero

    def test_commutative_ring_sorts_words(self):
        ring = QRingCommutative()
        out = nc_normalize("dcba", ring)
        assert out.terms == {(1, 1, 1, 1): Fraction(1)}


class TestFhat:
    def test_numeric_h_zero_is_identity(self):
        f = build_fhat(h=0.0)
        assert f == identity(4, 1.0, 0.0)

    def test_series_constant_term_is_identity(self):
        f = build_fhat(order=4)
        for i in range(4):
            for j in range(4):
                assert f[i][j].coeff(0) == (1 if i == j else 0)

    def test_series_linear_term_is_minus_half_rhat(self):
        f = build_fhat(order=4)
        for i in range(4):
            for j in range(4):
                assert f[i][j].coeff(1) == Fraction(-RHAT[i][j], 2)

    def test_low_order_rejected(self):
        with pytest.raises(ValueError):
            build_fhat(order=1)

    def test_exact_mode_invertible_consistency(self):
        # the R-matrix construction below inverts it; spot-check that
        # the (2,1) entry carries the square root while (0,0) does not
        f = build_fhat()
        assert f[2][1].y.is_zero is False or f[2][1].x.is_zero is False
        assert f[0][0].y.is_zero


class TestRq:
    def test_exact_equals_explicit(self):
        r = build_rq(build_fhat())
        assert mat_eq(r, explicit_rq(QRingRational()))

    def test_exact_entries(self):
        r = build_rq(build_fhat())
        q = RatFunc.q()
        one, zero = RatFunc.from_int(1), RatFunc.from_int(0)
        assert r[0][0] == q and r[3][3] == q
        assert r[1][1] == one and r[2][2] == one
        assert r[2][1] == q - RatFunc.qinv()
        assert r[0][1] == zero and r[1][0] == zero

    def test_series_matches_explicit(self):
        r = build_rq(build_fhat(order=4), order=4)
        assert mat_eq(r, explicit_rq(QRingSeries(4)))

    def test_series_first_order(self):
        r = build_rq(build_fhat(order=3), order=3)
        for i in range(4):
            for j in range(4):
                assert r[i][j].coeff(0) == (1 if i == j else 0)
                assert r[i][j].coeff(1) == R_FIRST_ORDER[i][j]

    def test_numeric_h_zero_is_identity(self):
        r = build_rq(build_fhat(h=0.0), h=0.0)
        assert r == identity(4, 1.0, 0.0)

    def test_numeric_matches_explicit_at_half(self):
        import math
        h = 0.5
        r = build_rq(build_fhat(h=h), h=h)
        q = math.exp(h)
        expected = [
            [q, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, q - 1.0 / q, 1.0, 0.0],
            [0.0, 0.0, 0.0, q],
        ]
        for i in range(4):
            for j in range(4):
                assert r[i][j] == pytest.approx(expected[i][j], abs=1e-12)


class TestYangBaxter:
    def test_identity_satisfies_qybe(self):
        one, zero = RatFunc.from_int(1), RatFunc.from_int(0)
        assert qybe_residual(identity(4, one, zero)) == 0.0

    def test_rq_satisfies_qybe_exactly(self):
        assert qybe_residual(explicit_rq(QRingRational())) == 0.0

    def test_constructed_rq_satisfies_qybe(self):
        assert qybe_residual(build_rq(build_fhat())) == 0.0

    def test_series_rq_satisfies_qybe(self):
        assert qybe_residual(explicit_rq(QRingSeries(4))) == 0.0

    def test_unitarity_fails_for_rq(self):
        # R * flip(R) - I has (0,0) entry q^2 - 1 and (2,2) entry
        # (q - 1/q)^2, whose coefficient size 2 is the maximum
        worst, where, text = unitarity_witness(explicit_rq(QRingRational()))
        assert worst == 2.0
        assert where == (2, 2)
        assert text is not None

    def test_unitarity_holds_for_identity(self):
        one, zero = RatFunc.from_int(1), RatFunc.from_int(0)
        worst, _, _ = unitarity_witness(identity(4, one, zero))
        assert worst == 0.0


class TestRTT:
    def test_all_sixteen_entries_vanish(self):
        res = rtt_residual()
        assert all(entry.is_zero for row in res for entry in row)
        assert rtt_max_size(res) == 0.0

    def test_identity_is_negative_control(self):
        ring = QRingRational()
        res = rtt_residual(identity(4, ring.one, ring.zero), ring)
        assert any(not entry.is_zero for row in res for entry in row)

    def test_commutative_limit_trivial(self):
        ring = QRingCommutative()
        res = rtt_residual(explicit_rq(ring), ring)
        assert all(entry.is_zero for row in res for entry in row)

    def test_series_mode_vanishes(self):
        ring = QRingSeries(3)
        res = rtt_residual(explicit_rq(ring), ring)
        assert all(entry.is_zero for row in res for entry in row)


class TestDeterminant:
    def test_central_in_rational_mode(self):
        assert quantum_determinant_central()

    def test_central_in_commutative_mode(self):
        assert quantum_determinant_central(QRingCommutative())


class TestSemiclassical:
    def test_matches_sklyanin_on_all_pairs(self):
        for x in GENS:
            for y in GENS:
                got = semiclassical_limit(x, y, order=4)
                want = sklyanin_bracket(SklyaninPoly.gen(x),
                                        SklyaninPoly.gen(y))
                assert got == want

    def test_ad_pair_explicitly(self):
        got = semiclassical_limit("a", "d", order=3)
        assert got == 2 * SklyaninPoly.gen("b") * SklyaninPoly.gen("c")

    def test_bc_pair_vanishes(self):
        assert semiclassical_limit("b", "c", order=3).is_zero

    def test_low_order_rejected(self):
        with pytest.raises(ValueError):
            semiclassical_limit("a", "b", order=2)


class TestQPolyAlgebra:
    def test_associativity_spot(self):
        ring = QRingRational()
        a = QPoly.letter(ring, "a")
        d = QPoly.letter(ring, "d")
        b = QPoly.letter(ring, "b")
        assert ((a * d) * b - a * (d * b)).is_zero

    def test_scalar_centrality(self):
        ring = QRingRational()
        x = QPoly.letter(ring, "c")
        assert (x.scale(ring.q) - ring.q * x).is_zero
