"""Normal-ordered operator words and Weyl symmetrization.

Elements live in the unital algebra generated by Q_1..Q_n, P_1..P_n
over complex rationals with a formal hbar, subject to
``[Q_i, P_j] = sign * i * hbar * delta_ij`` (generators with distinct
indices commute).  Words are kept in the unique normal form with every
Q left of every P per index, indices ascending, so equality of
elements is equality of term maps.

The ``sign`` flag matches :mod:`starq.phasepoly`: symmetrizing with a
given sign intertwines the star product taken with the same sign, e.g.
the default sign=-1 pairs ``q*p = qp - i*hbar/2`` with
``[Q, P] = -i*hbar``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from ._termmap import add_maps, max_abs, normalized, scale_map
from .phasepoly import PhasePoly, moyal_star
from .rationals import CRat

__all__ = ["WeylElement", "weyl_symmetrize", "weyl_homomorphism_check"]

_I_POW = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}


class WeylElement:
    """Sum of normal-ordered words Q_1^a1..Q_n^an P_1^b1..P_n^bn hbar^e.

    Exponent keys are ``(a_1..a_n, b_1..b_n, e_hbar)``; coefficients are
    integer (re, im) pairs over one shared denominator.  The commutator
    sign is fixed per element and must agree across binary operations.
    """

    __slots__ = ("n", "sign", "terms", "den")

    def __init__(self, n: int, terms=None, den: int = 1, sign: int = -1):
        if n < 1:
            raise ValueError("dimension n must be a positive integer")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.n = n
        self.sign = sign
        width = 2 * n + 1
        raw = {}
        if terms:
            for key, coeff in terms.items():
                key = tuple(key)
                if len(key) != width or any(e < 0 for e in key):
                    raise ValueError(f"bad exponent key {key} for n={n}")
                raw[key] = (int(coeff[0]), int(coeff[1]))
        self.terms, self.den = normalized(raw, int(den))

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int = 1, sign: int = -1) -> "WeylElement":
        return cls(n, sign=sign)

    @classmethod
    def const(cls, value, n: int = 1, sign: int = -1) -> "WeylElement":
        c = CRat.coerce(value)
        den = c.re.denominator * c.im.denominator
        nr = c.re.numerator * c.im.denominator
        ni = c.im.numerator * c.re.denominator
        return cls(n, {(0,) * (2 * n + 1): (nr, ni)}, den, sign)

    @classmethod
    def one(cls, n: int = 1, sign: int = -1) -> "WeylElement":
        return cls.const(1, n, sign)

    @classmethod
    def Q(cls, i: int = 1, n: int | None = None, sign: int = -1) -> "WeylElement":
        n = max(i, 1) if n is None else n
        key = [0] * (2 * n + 1)
        key[i - 1] = 1
        return cls(n, {tuple(key): (1, 0)}, sign=sign)

    @classmethod
    def P(cls, i: int = 1, n: int | None = None, sign: int = -1) -> "WeylElement":
        n = max(i, 1) if n is None else n
        key = [0] * (2 * n + 1)
        key[n + i - 1] = 1
        return cls(n, {tuple(key): (1, 0)}, sign=sign)

    @classmethod
    def hbar(cls, n: int = 1, power: int = 1, sign: int = -1) -> "WeylElement":
        key = [0] * (2 * n + 1)
        key[2 * n] = power
        return cls(n, {tuple(key): (1, 0)}, sign=sign)

    # inspection -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, qexp, pexp, hbar_exp: int = 0) -> CRat:
        qexp = (qexp,) if isinstance(qexp, int) else tuple(qexp)
        pexp = (pexp,) if isinstance(pexp, int) else tuple(pexp)
        c = self.terms.get(qexp + pexp + (hbar_exp,))
        if c is None:
            return CRat(0, 0)
        return CRat(Fraction(c[0], self.den), Fraction(c[1], self.den))

    def items(self):
        for key, (r, i) in sorted(self.terms.items()):
            yield key, CRat(Fraction(r, self.den), Fraction(i, self.den))

    def max_abs_coeff(self) -> float:
        return max_abs(self.terms, self.den)

    # arithmetic -----------------------------------------------------------

    def _binary_check(self, other: "WeylElement"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        if self.sign != other.sign:
            raise ValueError("commutator sign mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = WeylElement.const(other, self.n, self.sign)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._binary_check(other)
        terms, den = add_maps(self.terms, self.den, other.terms, other.den)
        return _raw(self.n, terms, den, self.sign)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = WeylElement.const(other, self.n, self.sign)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._binary_check(other)
        terms, den = add_maps(self.terms, self.den, other.terms, other.den, -1, 0)
        return _raw(self.n, terms, den, self.sign)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        terms = {k: (-r, -i) for k, (r, i) in self.terms.items()}
        return _raw(self.n, terms, self.den, self.sign)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            c = CRat.coerce(other)
            dr = c.re.denominator * c.im.denominator
            nr = c.re.numerator * c.im.denominator
            ni = c.im.numerator * c.re.denominator
            terms, den = scale_map(self.terms, self.den, nr, ni, dr)
            return _raw(self.n, terms, den, self.sign)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._binary_check(other)
        n = self.n
        # c0 = P Q - Q P = -sign * i * hbar; each contraction contributes one c0
        out: dict = {}
        for k1, (r1, i1) in self.terms.items():
            a = k1[:n]
            b = k1[n:2 * n]
            for k2, (r2, i2) in other.terms.items():
                c = k2[:n]
                d = k2[n:2 * n]
                rr = r1 * r2 - i1 * i2
                ii = r1 * i2 + i1 * r2
                base_h = k1[-1] + k2[-1]
                for ks, w in _contractions(b, c):
                    K = sum(ks)
                    cr, ci = _I_POW[K % 4]
                    if self.sign > 0 and K % 2:
                        cr, ci = -cr, -ci
                    wr = w * cr
                    wi = w * ci
                    key = (tuple(ai + ci2 - ki for ai, ci2, ki in zip(a, c, ks))
                           + tuple(bi + di - ki for bi, di, ki in zip(b, d, ks))
                           + (base_h + K,))
                    tr = rr * wr - ii * wi
                    ti = rr * wi + ii * wr
                    pr, pi = out.get(key, (0, 0))
                    out[key] = (pr + tr, pi + ti)
        terms, den = normalized(out, self.den * other.den)
        return _raw(n, terms, den, self.sign)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = WeylElement.one(self.n, self.sign)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = WeylElement.const(other, self.n, self.sign)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return (self.n == other.n and self.sign == other.sign
                and self.den == other.den and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.sign, self.den, frozenset(self.terms.items())))

    # serialization ----------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key in sorted(self.terms, key=lambda k: (sum(k), k)):
            r, i = self.terms[key]
            re_s = str(Fraction(r, self.den))
            imf = Fraction(i, self.den)
            sgn = "+" if imf >= 0 else "-"
            coeff = f"({re_s}{sgn}{abs(imf.numerator)}i"
            if imf.denominator != 1:
                coeff += f"/{imf.denominator}"
            coeff += ")"
            factors = [coeff]
            for j in range(self.n):
                if key[j]:
                    factors.append(f"Q{j + 1}^{key[j]}")
            for j in range(self.n):
                if key[self.n + j]:
                    factors.append(f"P{j + 1}^{key[self.n + j]}")
            if key[-1]:
                factors.append(f"hbar^{key[-1]}")
            pieces.append("*".join(factors))
        return " + ".join(pieces)

    def __repr__(self):
        return f"WeylElement({self.to_text()!r}, sign={self.sign})"


def _raw(n, terms, den, sign) -> WeylElement:
    obj = object.__new__(WeylElement)
    obj.n = n
    obj.terms = terms
    obj.den = den
    obj.sign = sign
    return obj


def _contractions(b, c):
    """All per-index contraction counts for normal-ordering P^b Q^c.

    Yields (ks, weight) where ks[i] is the number of c0 factors taken at
    index i with integer weight prod_i k! C(b_i,k) C(c_i,k); this is the
    closed form of repeatedly rewriting PQ as QP + c0.
    """
    n = len(b)
    combos = [((), 1)]
    for i in range(n):
        nxt = []
        top = min(b[i], c[i])
        for ks, w in combos:
            for k in range(top + 1):
                nxt.append((ks + (k,), w * factorial(k) * comb(b[i], k) * comb(c[i], k)))
        combos = nxt
    return combos


@lru_cache(maxsize=None)
def _sym_table(a: int, b: int):
    """Sum over all words with a Q's and b P's, each put in normal form.

    Entries map (c, d, k) -> integer weight, meaning weight * c0^k * Q^c P^d
    with c0 = PQ - QP.  Built by appending one letter at a time: appending
    Q to Q^c P^d gives Q^{c+1} P^d + d * c0 * Q^c P^{d-1}; appending P just
    raises d.
    """
    if a == 0 and b == 0:
        return {(0, 0, 0): 1}
    acc: dict = {}
    if a > 0:
        for (c, d, k), w in _sym_table(a - 1, b).items():
            acc[(c + 1, d, k)] = acc.get((c + 1, d, k), 0) + w
            if d > 0:
                acc[(c, d - 1, k + 1)] = acc.get((c, d - 1, k + 1), 0) + w * d
    if b > 0:
        for (c, d, k), w in _sym_table(a, b - 1).items():
            acc[(c, d + 1, k)] = acc.get((c, d + 1, k), 0) + w
    return acc


def weyl_symmetrize(f: PhasePoly, sign: int = -1) -> WeylElement:
    """Symmetric (Weyl) ordering of a polynomial symbol.

    Each monomial q_i^a p_i^b maps to the average of all distinct words
    with a Q_i's and b P_i's, reduced to normal form under
    [Q, P] = sign*i*hbar; distinct indices are independent and hbar
    factors pass through.  Extended to general polynomials by linearity.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = f.n
    out = WeylElement.zero(n, sign)
    for key, coeff in f.items():
        a = key[:n]
        b = key[n:2 * n]
        # tensor the per-index word sums, tracking total c0 power
        combined = [((), (), 0, 1)]
        denom = 1
        for i in range(n):
            denom *= comb(a[i] + b[i], a[i])
            table = _sym_table(a[i], b[i])
            nxt = []
            for (cs, ds, K, w) in combined:
                for (c, d, k), w2 in table.items():
                    nxt.append((cs + (c,), ds + (d,), K + k, w * w2))
            combined = nxt
        terms: dict = {}
        for cs, ds, K, w in combined:
            cr, ci = _I_POW[K % 4]
            if sign < 0:
                pass  # c0 = +i*hbar, no extra sign
            elif K % 2:
                cr, ci = -cr, -ci  # c0 = -i*hbar
            tkey = cs + ds + (key[-1] + K,)
            pr, pi = terms.get(tkey, (0, 0))
            terms[tkey] = (pr + w * cr, pi + w * ci)
        piece = _raw(n, *normalized(terms, denom), sign)
        out = out + piece * coeff
    return out


def weyl_homomorphism_check(f: PhasePoly, g: PhasePoly, sign: int = -1) -> bool:
    """True iff symmetrizing f*g equals the product of the symmetrizations.

    This is the exact algebraic statement that the Weyl ordering
    intertwines the star product (taken with the same sign flag) with
    operator multiplication.
    """
    lhs = weyl_symmetrize(moyal_star(f, g, sign), sign)
    rhs = weyl_symmetrize(f, sign) * weyl_symmetrize(g, sign)
    return lhs == rhs
