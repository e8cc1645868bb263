"""Exact scalar towers for the quantum-group layer.

Three coefficient domains, all built on fractions.Fraction:

* LaurentQ: Laurent polynomials in s, where s plays the role of q^(1/2)
  so that q = s^2 and square roots of q stay polynomial.
* RatFunc: quotients of LaurentQ in canonical reduced form (denominator
  a monic polynomial in s with nonzero constant term).
* HSeries: truncated power series in a formal h with rational
  coefficients, supporting exp, sqrt and division by units; q = e^h
  lives here for semiclassical expansions.
* SqrtExt: the quadratic extension x + y*w with w^2 = c over RatFunc,
  needed because intermediate matrix entries contain sqrt(q + q^-1)
  even though final results collapse back to RatFunc.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

__all__ = ["LaurentQ", "RatFunc", "HSeries", "SqrtExt"]


def _is_zero(x) -> bool:
    return x.is_zero if hasattr(x, "is_zero") else x == 0


class LaurentQ:
    """Laurent polynomial in s with Fraction coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    c[int(k)] = v
        self.c = c

    @classmethod
    def zero(cls) -> "LaurentQ":
        return cls()

    @classmethod
    def one(cls) -> "LaurentQ":
        return cls({0: 1})

    @classmethod
    def s_power(cls, k: int, coeff=1) -> "LaurentQ":
        return cls({k: Fraction(coeff)})

    @classmethod
    def from_fraction(cls, x) -> "LaurentQ":
        return cls({0: Fraction(x)})

    @property
    def is_zero(self) -> bool:
        return not self.c

    def min_deg(self) -> int:
        return min(self.c) if self.c else 0

    def max_deg(self) -> int:
        return max(self.c) if self.c else 0

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            w = out.get(k, Fraction(0)) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        r = LaurentQ.__new__(LaurentQ)
        r.c = out
        return r

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        r = LaurentQ.__new__(LaurentQ)
        r.c = {k: -v for k, v in self.c.items()}
        return r

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentQ.from_fraction(other)
        out: dict = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                w = out.get(k, Fraction(0)) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        r = LaurentQ.__new__(LaurentQ)
        r.c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = LaurentQ.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentQ.from_fraction(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def shift(self, k: int) -> "LaurentQ":
        r = LaurentQ.__new__(LaurentQ)
        r.c = {d + k: v for d, v in self.c.items()}
        return r

    def subs_one(self) -> Fraction:
        """Evaluate at s = 1."""
        return sum(self.c.values(), Fraction(0))

    def size(self) -> float:
        return max((abs(float(v)) for v in self.c.values()), default=0.0)

    def to_text(self) -> str:
        if not self.c:
            return "0"
        bits = []
        for k in sorted(self.c):
            v = self.c[k]
            if k == 0:
                bits.append(f"{v}")
            else:
                bits.append(f"{v}*s^{k}")
        return " + ".join(bits)

    def __repr__(self):
        return f"LaurentQ({self.to_text()!r})"


# --- dense polynomial helpers on Fraction lists (index = degree) -----------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b):
    a = a[:]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, bc in enumerate(b):
            a[k + i] -= f * bc
        _trim(a)
    return _trim(q), a


def _pgcd(a, b):
    a, b = a[:], b[:]
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def _as_list(x: LaurentQ):
    if x.is_zero:
        return 0, []
    m = x.min_deg()
    out = [Fraction(0)] * (x.max_deg() - m + 1)
    for k, v in x.c.items():
        out[k - m] = v
    return m, out


def _from_list(coeffs, offset=0) -> LaurentQ:
    return LaurentQ({offset + i: v for i, v in enumerate(coeffs) if v})


class RatFunc:
    """Reduced fraction of Laurent polynomials in s (q = s^2).

    Canonical form: the denominator is a monic polynomial in s with a
    nonzero constant term; stray powers of s live in the numerator.
    Equality is therefore plain structural equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentQ, den: LaurentQ | None = None):
        if den is None:
            den = LaurentQ.one()
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.num = LaurentQ.zero()
            self.den = LaurentQ.one()
            return
        mn, pn = _as_list(num)
        md, pd = _as_list(den)
        g = _pgcd(pn, pd)
        if len(g) > 1:
            pn, _ = _pdivmod(pn, g)
            pd, _ = _pdivmod(pd, g)
        lead = pd[-1]
        pn = [x / lead for x in pn]
        pd = [x / lead for x in pd]
        self.num = _from_list(pn, mn - md)
        self.den = _from_list(pd)

    @classmethod
    def from_int(cls, k) -> "RatFunc":
        return cls(LaurentQ.from_fraction(k))

    @classmethod
    def s_power(cls, k: int) -> "RatFunc":
        return cls(LaurentQ.s_power(k))

    @classmethod
    def q(cls) -> "RatFunc":
        return cls.s_power(2)

    @classmethod
    def qinv(cls) -> "RatFunc":
        return cls.s_power(-2)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other):
        other = _try_rf(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _try_rf(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __rsub__(self, other):
        return _coerce_rf(other) - self

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __mul__(self, other):
        other = _try_rf(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __pow__(self, e: int):
        out = RatFunc.from_int(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = _coerce_rf(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def subs_one(self) -> Fraction:
        return self.num.subs_one() / self.den.subs_one()

    def size(self) -> float:
        return self.num.size()

    def to_text(self) -> str:
        if self.den == LaurentQ.one():
            return self.num.to_text()
        return f"({self.num.to_text()}) / ({self.den.to_text()})"

    def __repr__(self):
        return f"RatFunc({self.to_text()!r})"


def _try_rf(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentQ):
        return RatFunc(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_int(x)
    return None


def _coerce_rf(x) -> RatFunc:
    out = _try_rf(x)
    if out is None:
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")
    return out


class HSeries:
    """Power series in h truncated at a fixed order, Fraction coefficients."""

    __slots__ = ("order", "c")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [Fraction(x) for x in coeffs]
        if order is None:
            order = len(coeffs) - 1
        coeffs = coeffs[:order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        self.order = order
        self.c = tuple(coeffs)

    @classmethod
    def const(cls, x, order: int) -> "HSeries":
        return cls([Fraction(x)], order)

    @classmethod
    def h(cls, order: int) -> "HSeries":
        return cls([0, 1], order)

    @classmethod
    def exp(cls, rate, order: int) -> "HSeries":
        """e^(rate*h) truncated; rate is an exact rational."""
        rate = Fraction(rate)
        return cls([rate ** k / factorial(k) for k in range(order + 1)], order)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def _check(self, other: "HSeries"):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        other = self._try(other)
        if other is None:
            return NotImplemented
        self._check(other)
        return HSeries([a + b for a, b in zip(self.c, other.c)], self.order)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._try(other)
        if other is None:
            return NotImplemented
        self._check(other)
        return HSeries([a - b for a, b in zip(self.c, other.c)], self.order)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return HSeries([-a for a in self.c], self.order)

    def __mul__(self, other):
        other = self._try(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out = [Fraction(0)] * (self.order + 1)
        for a, ca in enumerate(self.c):
            if ca:
                for b in range(self.order + 1 - a):
                    if other.c[b]:
                        out[a + b] += ca * other.c[b]
        return HSeries(out, self.order)

    __rmul__ = __mul__

    def inverse(self) -> "HSeries":
        if self.c[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = 1 / self.c[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self.c[j] * out[k - j]
            out.append(-acc * inv0)
        return HSeries(out, self.order)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sqrt(self) -> "HSeries":
        if self.c[0] != 1:
            raise ValueError("series sqrt implemented for constant term 1")
        out = [Fraction(1)]
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k):
                acc += out[j] * out[k - j]
            out.append((self.c[k] - acc) / 2)
        return HSeries(out, self.order)

    def __pow__(self, e: int):
        out = HSeries.const(1, self.order)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.order == other.order and self.c == other.c

    def __hash__(self):
        return hash((self.order, self.c))

    def _try(self, x):
        if isinstance(x, HSeries):
            return x
        if isinstance(x, (int, Fraction)):
            return HSeries.const(x, self.order)
        return None

    def _coerce(self, x) -> "HSeries":
        out = self._try(x)
        if out is None:
            raise TypeError(f"cannot coerce {type(x).__name__} to HSeries")
        return out

    def coeff(self, k: int) -> Fraction:
        return self.c[k] if k <= self.order else Fraction(0)

    def size(self) -> float:
        return max((abs(float(v)) for v in self.c), default=0.0)

    def to_text(self) -> str:
        bits = [f"{v}*h^{k}" if k else f"{v}" for k, v in enumerate(self.c) if v]
        body = " + ".join(bits) if bits else "0"
        return f"{body} + O(h^{self.order + 1})"

    def __repr__(self):
        return f"HSeries({self.to_text()!r})"


class SqrtExt:
    """Quadratic extension x + y*w with w^2 = c over RatFunc scalars."""

    __slots__ = ("x", "y", "mod")

    def __init__(self, x: RatFunc, y: RatFunc, mod: RatFunc):
        self.x = x
        self.y = y
        self.mod = mod

    @classmethod
    def lift(cls, x: RatFunc, mod: RatFunc) -> "SqrtExt":
        return cls(x, RatFunc.from_int(0), mod)

    @classmethod
    def root(cls, mod: RatFunc) -> "SqrtExt":
        return cls(RatFunc.from_int(0), RatFunc.from_int(1), mod)

    @property
    def is_zero(self) -> bool:
        return self.x.is_zero and self.y.is_zero

    def _check(self, other: "SqrtExt"):
        if self.mod != other.mod:
            raise ValueError("mixing different quadratic extensions")

    def _try(self, v):
        if isinstance(v, SqrtExt):
            return v
        if isinstance(v, (int, Fraction, LaurentQ, RatFunc)):
            return SqrtExt.lift(_coerce_rf(v), self.mod)
        return None

    def _coerce(self, v) -> "SqrtExt":
        out = self._try(v)
        if out is None:
            raise TypeError(f"cannot coerce {type(v).__name__} to SqrtExt")
        return out

    def __add__(self, other):
        other = self._try(other)
        if other is None:
            return NotImplemented
        self._check(other)
        return SqrtExt(self.x + other.x, self.y + other.y, self.mod)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._try(other)
        if other is None:
            return NotImplemented
        self._check(other)
        return SqrtExt(self.x - other.x, self.y - other.y, self.mod)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return SqrtExt(-self.x, -self.y, self.mod)

    def __mul__(self, other):
        other = self._try(other)
        if other is None:
            return NotImplemented
        self._check(other)
        return SqrtExt(self.x * other.x + self.y * other.y * self.mod,
                       self.x * other.y + self.y * other.x, self.mod)

    __rmul__ = __mul__

    def inverse(self) -> "SqrtExt":
        d = self.x * self.x - self.y * self.y * self.mod
        if d.is_zero:
            raise ZeroDivisionError("non-invertible quadratic extension element")
        return SqrtExt(self.x / d, -self.y / d, self.mod)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.mod == other.mod and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y, self.mod))

    def size(self) -> float:
        return max(self.x.size(), self.y.size())

    def to_text(self) -> str:
        return f"({self.x.to_text()}) + ({self.y.to_text()})*w"

    def __repr__(self):
        return f"SqrtExt({self.to_text()!r})"
