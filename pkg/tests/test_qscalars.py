"""Exact scalar tower: Laurent polynomials, rational functions in s,
truncated h-series, and the quadratic square-root extension."""

from fractions import Fraction

import pytest

from starq.qscalars import HSeries, LaurentQ, RatFunc, SqrtExt


class TestLaurent:
    def test_mul_collects(self):
        s = LaurentQ.s_power(1)
        assert (s + LaurentQ.s_power(-1)) * s == LaurentQ({2: 1, 0: 1})

    def test_negative_powers(self):
        x = LaurentQ({-3: Fraction(1, 2)})
        assert x * LaurentQ.s_power(3) == LaurentQ.from_fraction(Fraction(1, 2))

    def test_subs_one(self):
        assert LaurentQ({2: 1, -2: -1}).subs_one() == 0


class TestRatFunc:
    def test_cancellation(self):
        # (s^2 - 1)/(s - 1) = s + 1
        num = LaurentQ({2: 1, 0: -1})
        den = LaurentQ({1: 1, 0: -1})
        assert RatFunc(num, den) == RatFunc(LaurentQ({1: 1, 0: 1}))

    def test_laurent_normalization(self):
        # s^-1 / s^-2 = s, denominator becomes 1
        f = RatFunc(LaurentQ.s_power(-1), LaurentQ.s_power(-2))
        assert f == RatFunc.s_power(1)
        assert f.den == LaurentQ.one()

    def test_field_axioms_spot(self):
        q = RatFunc.q()
        x = (q - 1) / (q + 1)
        assert x * (q + 1) == q - 1
        assert x - x == RatFunc.from_int(0)
        assert (x / x) == RatFunc.from_int(1)

    def test_den_monic_with_nonzero_constant(self):
        f = RatFunc(LaurentQ({0: 3}), LaurentQ({3: 2, 1: 2}))
        assert f.den.c[0] != 0
        assert f.den.c[max(f.den.c)] == 1

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            RatFunc.q() / RatFunc.from_int(0)


class TestHSeries:
    def test_exp_inverse_pair(self):
        e = HSeries.exp(1, 6)
        assert e * HSeries.exp(-1, 6) == HSeries.const(1, 6)

    def test_exp_coefficients(self):
        e = HSeries.exp(Fraction(1, 2), 4)
        assert e.c == (1, Fraction(1, 2), Fraction(1, 8),
                       Fraction(1, 48), Fraction(1, 384))

    def test_sqrt_squares_back(self):
        x = HSeries([1, 2, -1, Fraction(1, 3), 5], 4)
        r = x.sqrt()
        assert r * r == x

    def test_inverse(self):
        x = HSeries([2, 1, 0, 4], 3)
        assert x * x.inverse() == HSeries.const(1, 3)
        with pytest.raises(ZeroDivisionError):
            HSeries.h(3).inverse()

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            HSeries.h(3) + HSeries.h(4)

    def test_truncation_drops_high_orders(self):
        h = HSeries.h(2)
        assert h * h * h == HSeries.const(0, 2)


class TestSqrtExt:
    def _mod(self):
        # w^2 = (q + 1/q)/2
        return (RatFunc.q() + RatFunc.qinv()) * RatFunc(
            LaurentQ.from_fraction(Fraction(1, 2)))

    def test_root_squares_to_modulus(self):
        mod = self._mod()
        w = SqrtExt.root(mod)
        assert w * w == SqrtExt.lift(mod, mod)

    def test_inverse(self):
        mod = self._mod()
        x = SqrtExt(RatFunc.q(), RatFunc.from_int(3), mod)
        one = SqrtExt.lift(RatFunc.from_int(1), mod)
        assert x * x.inverse() == one
        assert one / x == x.inverse()

    def test_mixed_moduli_rejected(self):
        w1 = SqrtExt.root(RatFunc.q())
        w2 = SqrtExt.root(RatFunc.qinv())
        with pytest.raises(ValueError):
            _ = w1 + w2
