"""Exact star products on polynomial phase-space symbols.

Symbols are polynomials on 2n-dimensional phase space with coordinates
q_1..q_n, p_1..p_n, complex-rational coefficients, and an explicit
formal generator ``hbar``.  On polynomials the star product terminates
after finitely many bidifferential orders, so every identity in this
module is checked by exact integer arithmetic; floats appear only in
:meth:`PhasePoly.evaluate`.

Sign convention.  The default pairing multiplies the k-th
bidifferential term by ``(-i*hbar/2)**k / k!``, so ``q*p`` maps to
``qp - i*hbar/2`` and the star commutator of (q, p) is ``-i*hbar``
exactly.  Passing ``sign=+1`` selects the opposite pairing
(``+i*hbar/2``), which is the convention realized by the Hermite-basis
numerics in :mod:`starq.weylnumeric`.  The companion operator algebra
in :mod:`starq.weylalgebra` couples its commutator
``[Q, P] = sign*i*hbar`` to the same flag so that Weyl symmetrization
intertwines the two products for either choice.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial

import numpy as np

from ._termmap import add_maps, max_abs, normalized, scale_map
from .rationals import CRat

__all__ = [
    "PhasePoly",
    "HbarSeries",
    "ParseError",
    "parse_expression",
    "poisson_bracket",
    "bidiff_power",
    "moyal_star",
    "star_commutator",
    "moyal_bracket",
    "compose_linear",
    "is_symplectic",
    "symplectic_equivariance_residual",
]

# powers of the imaginary unit as integer pairs
_I_POW = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}


class PhasePoly:
    """Polynomial in q_1..q_n, p_1..p_n and hbar with complex-rational coefficients.

    Exponent keys are tuples ``(eq_1..eq_n, ep_1..ep_n, e_hbar)``.
    Coefficients are stored as integer (re, im) numerator pairs over a
    single positive denominator; the stored form is canonical (no zero
    terms, gcd-reduced), so equality is plain dict equality.  Instances
    are immutable by convention.
    """

    __slots__ = ("n", "terms", "den")

    def __init__(self, n: int, terms=None, den: int = 1):
        if n < 1:
            raise ValueError("dimension n must be a positive integer")
        self.n = n
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
    def zero(cls, n: int = 1) -> "PhasePoly":
        return cls(n)

    @classmethod
    def one(cls, n: int = 1) -> "PhasePoly":
        return cls.const(1, n)

    @classmethod
    def const(cls, value, n: int = 1) -> "PhasePoly":
        c = CRat.coerce(value)
        num = c.re.denominator * c.im.denominator
        nr = c.re.numerator * c.im.denominator
        ni = c.im.numerator * c.re.denominator
        return cls(n, {(0,) * (2 * n + 1): (nr, ni)}, num)

    @classmethod
    def q(cls, i: int = 1, n: int | None = None) -> "PhasePoly":
        n = max(i, 1) if n is None else n
        if not 1 <= i <= n:
            raise ValueError(f"coordinate index {i} outside 1..{n}")
        key = [0] * (2 * n + 1)
        key[i - 1] = 1
        return cls(n, {tuple(key): (1, 0)})

    @classmethod
    def p(cls, i: int = 1, n: int | None = None) -> "PhasePoly":
        n = max(i, 1) if n is None else n
        if not 1 <= i <= n:
            raise ValueError(f"coordinate index {i} outside 1..{n}")
        key = [0] * (2 * n + 1)
        key[n + i - 1] = 1
        return cls(n, {tuple(key): (1, 0)})

    @classmethod
    def hbar(cls, n: int = 1, power: int = 1) -> "PhasePoly":
        key = [0] * (2 * n + 1)
        key[2 * n] = power
        return cls(n, {tuple(key): (1, 0)})

    @classmethod
    def monomial(cls, n: int, qexp, pexp, hbar_exp: int = 0, coeff=1) -> "PhasePoly":
        qexp = (qexp,) if isinstance(qexp, int) else tuple(qexp)
        pexp = (pexp,) if isinstance(pexp, int) else tuple(pexp)
        if len(qexp) != n or len(pexp) != n:
            raise ValueError("exponent vectors must have length n")
        return cls.const(coeff, n) * cls(n, {qexp + pexp + (hbar_exp,): (1, 0)})

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
        """Yield (key, CRat) pairs; key = (eq_1..eq_n, ep_1..ep_n, e_hbar)."""
        for key, (r, i) in sorted(self.terms.items()):
            yield key, CRat(Fraction(r, self.den), Fraction(i, self.den))

    def degree(self) -> int:
        """Total degree in the phase-space variables (hbar not counted); -1 for 0."""
        if not self.terms:
            return -1
        w = 2 * self.n
        return max(sum(k[:w]) for k in self.terms)

    def hbar_degree(self) -> int:
        if not self.terms:
            return -1
        return max(k[-1] for k in self.terms)

    def max_abs_coeff(self) -> float:
        return max_abs(self.terms, self.den)

    def hbar_coefficient(self, k: int) -> "PhasePoly":
        """The hbar^k coefficient, returned with the hbar exponent cleared."""
        out = {}
        for key, c in self.terms.items():
            if key[-1] == k:
                out[key[:-1] + (0,)] = c
        return PhasePoly(self.n, out, self.den)

    # arithmetic -----------------------------------------------------------

    def _binary_check(self, other: "PhasePoly"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = PhasePoly.const(other, self.n)
        if not isinstance(other, PhasePoly):
            return NotImplemented
        self._binary_check(other)
        terms, den = add_maps(self.terms, self.den, other.terms, other.den)
        return _raw(self.n, terms, den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = PhasePoly.const(other, self.n)
        if not isinstance(other, PhasePoly):
            return NotImplemented
        self._binary_check(other)
        terms, den = add_maps(self.terms, self.den, other.terms, other.den, -1, 0)
        return _raw(self.n, terms, den)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        terms = {k: (-r, -i) for k, (r, i) in self.terms.items()}
        return _raw(self.n, terms, self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            c = CRat.coerce(other)
            dr = c.re.denominator * c.im.denominator
            nr = c.re.numerator * c.im.denominator
            ni = c.im.numerator * c.re.denominator
            terms, den = scale_map(self.terms, self.den, nr, ni, dr)
            return _raw(self.n, terms, den)
        if not isinstance(other, PhasePoly):
            return NotImplemented
        self._binary_check(other)
        out: dict = {}
        for k1, (r1, i1) in self.terms.items():
            for k2, (r2, i2) in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                rr = r1 * r2 - i1 * i2
                ii = r1 * i2 + i1 * r2
                pr, pi = out.get(key, (0, 0))
                out[key] = (pr + rr, pi + ii)
        terms, den = normalized(out, self.den * other.den)
        return _raw(self.n, terms, den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = PhasePoly.one(self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            other = PhasePoly.const(other, self.n)
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return (self.n == other.n and self.den == other.den
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.den, frozenset(self.terms.items())))

    # calculus -------------------------------------------------------------

    def _diff(self, pos: int) -> "PhasePoly":
        out = {}
        for key, (r, i) in self.terms.items():
            e = key[pos]
            if e == 0:
                continue
            nk = key[:pos] + (e - 1,) + key[pos + 1:]
            pr, pi = out.get(nk, (0, 0))
            out[nk] = (pr + e * r, pi + e * i)
        terms, den = normalized(out, self.den)
        return _raw(self.n, terms, den)

    def diff_q(self, i: int = 1) -> "PhasePoly":
        if not 1 <= i <= self.n:
            raise ValueError(f"coordinate index {i} outside 1..{self.n}")
        return self._diff(i - 1)

    def diff_p(self, i: int = 1) -> "PhasePoly":
        if not 1 <= i <= self.n:
            raise ValueError(f"coordinate index {i} outside 1..{self.n}")
        return self._diff(self.n + i - 1)

    def subs_hbar(self, value) -> "PhasePoly":
        """Substitute an exact rational value for hbar."""
        v = Fraction(value)
        acc = PhasePoly.zero(self.n)
        for key, (r, i) in self.terms.items():
            w = v ** key[-1]
            piece = _raw(self.n, *normalized(
                {key[:-1] + (0,): (r * w.numerator, i * w.numerator)},
                self.den * w.denominator))
            acc = acc + piece
        return acc

    def evaluate(self, q, p, hbar: float = 1.0):
        """Evaluate numerically; q and p are scalars/arrays (n=1) or sequences of them."""
        if self.n == 1:
            coords = [np.asarray(q), np.asarray(p)]
        else:
            coords = [np.asarray(a) for a in list(q) + list(p)]
            if len(coords) != 2 * self.n:
                raise ValueError("expected n q-arrays and n p-arrays")
        shape = np.broadcast(*[c for c in coords]).shape if coords else ()
        out = np.zeros(shape, dtype=complex)
        for key, (r, i) in self.terms.items():
            c = (r + 1j * i) / self.den * hbar ** key[-1]
            term = np.full(shape, c, dtype=complex)
            for pos in range(2 * self.n):
                if key[pos]:
                    term = term * coords[pos] ** key[pos]
            out = out + term
        return out

    # serialization ----------------------------------------------------------

    def to_text(self) -> str:
        """Canonical sorted term list, e.g. ``(3/2+0i)*q1^2*p1^1*hbar^1``."""
        if not self.terms:
            return "0"
        pieces = []
        for key in sorted(self.terms, key=lambda k: (sum(k), k)):
            r, i = self.terms[key]
            re_s = str(Fraction(r, self.den))
            imf = Fraction(i, self.den)
            sign = "+" if imf >= 0 else "-"
            coeff = f"({re_s}{sign}{abs(imf.numerator)}i"
            if imf.denominator != 1:
                coeff += f"/{imf.denominator}"
            coeff += ")"
            factors = [coeff]
            for j in range(self.n):
                if key[j]:
                    factors.append(f"q{j + 1}^{key[j]}")
            for j in range(self.n):
                if key[self.n + j]:
                    factors.append(f"p{j + 1}^{key[self.n + j]}")
            if key[-1]:
                factors.append(f"hbar^{key[-1]}")
            pieces.append("*".join(factors))
        return " + ".join(pieces)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "PhasePoly":
        return parse_expression(text, n=n)

    def __repr__(self):
        return f"PhasePoly({self.to_text()!r})"


def _raw(n: int, terms, den) -> PhasePoly:
    """Build a PhasePoly from already-normalized internals (no re-validation)."""
    obj = object.__new__(PhasePoly)
    obj.n = n
    obj.terms = terms
    obj.den = den
    return obj


# ---------------------------------------------------------------------------
# bidifferential machinery


def _multi_diff(poly: PhasePoly, alpha: tuple, cache: dict) -> PhasePoly:
    got = cache.get(alpha)
    if got is not None:
        return got
    for pos in range(len(alpha) - 1, -1, -1):
        if alpha[pos]:
            parent = alpha[:pos] + (alpha[pos] - 1,) + alpha[pos + 1:]
            val = _multi_diff(poly, parent, cache)._diff(pos)
            break
    else:
        val = poly
    cache[alpha] = val
    return val


def bidiff_power(f: PhasePoly, g: PhasePoly, k: int) -> PhasePoly:
    """k-th iterate of the Poisson bidifferential applied to (f, g).

    ``bidiff_power(f, g, 0) = f*g`` and ``bidiff_power(f, g, 1)`` is the
    Poisson bracket.  The k-th iterate is the sum over all k-fold choices
    of (dq_i on f, dp_i on g) minus (dp_i on f, dq_i on g), multiplied out
    after differentiating.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a non-negative integer")
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {g.n}")
    n = f.n
    zero = (0,) * (2 * n)
    entries: dict = {(zero, zero): 1}
    for _ in range(k):
        nxt: dict = {}
        for (da, db), c in entries.items():
            for i in range(n):
                for (pa, pb, s) in ((i, n + i, c), (n + i, i, -c)):
                    ka = da[:pa] + (da[pa] + 1,) + da[pa + 1:]
                    kb = db[:pb] + (db[pb] + 1,) + db[pb + 1:]
                    key = (ka, kb)
                    nxt[key] = nxt.get(key, 0) + s
        entries = {key: v for key, v in nxt.items() if v}
        if not entries:
            return PhasePoly.zero(n)
    fcache: dict = {}
    gcache: dict = {}
    acc = PhasePoly.zero(n)
    for (alpha, beta), c in sorted(entries.items()):
        da = _multi_diff(f, alpha, fcache)
        if da.is_zero:
            continue
        db = _multi_diff(g, beta, gcache)
        if db.is_zero:
            continue
        acc = acc + (da * db) * c
    return acc


def poisson_bracket(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """Canonical Poisson bracket sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)."""
    return bidiff_power(f, g, 1)


def _star_poly(f: PhasePoly, g: PhasePoly, sign: int) -> PhasePoly:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {g.n}")
    n = f.n
    if f.is_zero or g.is_zero:
        return PhasePoly.zero(n)
    kmax = min(f.degree(), g.degree())
    acc = PhasePoly.zero(n)
    for k in range(kmax + 1):
        pk = bidiff_power(f, g, k)
        if pk.is_zero:
            continue
        r, i = _I_POW[(k if sign > 0 else 3 * k) % 4]
        hkey = (0,) * (2 * n) + (k,)
        mono = _raw(n, *normalized({hkey: (r, i)}, (2 ** k) * factorial(k)))
        acc = acc + pk * mono
    return acc


def moyal_star(f, g, sign: int = -1):
    """Star product; terminating bidifferential series on polynomials.

    Accepts two PhasePoly values (exact product) or two HbarSeries with
    equal truncation order (the exact product truncated to that order).
    The ``sign`` flag selects the pairing ``(sign*i*hbar/2)**k``.
    """
    if isinstance(f, HbarSeries) and isinstance(g, HbarSeries):
        _series_check(f, g)
        return HbarSeries.from_poly(
            _star_poly(f.to_poly(), g.to_poly(), sign), f.order, n=f.n)
    if isinstance(f, PhasePoly) and isinstance(g, PhasePoly):
        return _star_poly(f, g, sign)
    raise TypeError("moyal_star needs two PhasePoly or two HbarSeries arguments")


def star_commutator(f, g, sign: int = -1):
    """f*g - g*f under the star product (not divided by hbar)."""
    if isinstance(f, HbarSeries) and isinstance(g, HbarSeries):
        _series_check(f, g)
        c = _star_poly(f.to_poly(), g.to_poly(), sign) \
            - _star_poly(g.to_poly(), f.to_poly(), sign)
        return HbarSeries.from_poly(c, f.order, n=f.n)
    comm = _star_poly(f, g, sign) - _star_poly(g, f, sign)
    return comm


def _div_i_hbar(comm: PhasePoly, sign: int) -> PhasePoly:
    # divide by sign * i * hbar; every term of a star commutator carries hbar^k, k>=1
    out = {}
    for key, (r, i) in comm.terms.items():
        if key[-1] < 1:
            raise ValueError("hbar^0 part of the star commutator must vanish")
        nk = key[:-1] + (key[-1] - 1,)
        out[nk] = (sign * i, -sign * r)
    return _raw(comm.n, *normalized(out, comm.den))


def moyal_bracket(f, g, sign: int = -1):
    """(f*g - g*f) / (sign * i * hbar); deforms the Poisson bracket.

    With the default sign the bracket of (q, p) is exactly 1 and the
    hbar^0 coefficient always equals the Poisson bracket.  For series
    inputs the result keeps the shared truncation order: the order-N
    coefficient of the bracket only involves input coefficients up to
    order N, so no information is lost by truncating after the division.
    """
    if isinstance(f, HbarSeries) and isinstance(g, HbarSeries):
        _series_check(f, g)
        c = _star_poly(f.to_poly(), g.to_poly(), sign) \
            - _star_poly(g.to_poly(), f.to_poly(), sign)
        return HbarSeries.from_poly(_div_i_hbar(c, sign), f.order, n=f.n)
    comm = star_commutator(f, g, sign)
    return _div_i_hbar(comm, sign)


# ---------------------------------------------------------------------------
# linear symplectic substitution


def _frac_matrix(S, m: int):
    M = [[Fraction(x) for x in row] for row in S]
    if len(M) != m or any(len(row) != m for row in M):
        raise ValueError(f"expected a {m}x{m} matrix")
    return M


def _frac_inverse(M):
    m = len(M)
    A = [row[:] + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(M)]
    for col in range(m):
        piv = next((r for r in range(col, m) if A[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        d = A[col][col]
        A[col] = [x / d for x in A[col]]
        for r in range(m):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[m:] for row in A]


def is_symplectic(S, n: int) -> bool:
    """Exact test of S^T J S = J for the (q_1..q_n, p_1..p_n) ordering."""
    m = 2 * n
    M = _frac_matrix(S, m)

    def J(a, b):
        if b == a + n:
            return Fraction(1)
        if a == b + n:
            return Fraction(-1)
        return Fraction(0)

    for a in range(m):
        for b in range(m):
            s = sum(M[r][a] * J(r, c) * M[c][b] for r in range(m) for c in range(m)
                    if J(r, c) != 0)
            if s != J(a, b):
                return False
    return True


def compose_linear(f: PhasePoly, S) -> PhasePoly:
    """Substitute the linear change of variables x -> S x (x = (q_1..q_n, p_1..p_n))."""
    n = f.n
    m = 2 * n
    M = _frac_matrix(S, m)
    forms = []
    for j in range(m):
        acc = PhasePoly.zero(n)
        for k in range(m):
            if M[j][k] != 0:
                var = PhasePoly.q(k + 1, n) if k < n else PhasePoly.p(k - n + 1, n)
                acc = acc + var * M[j][k]
        forms.append(acc)
    pow_cache: dict = {}

    def form_pow(j, e):
        got = pow_cache.get((j, e))
        if got is None:
            got = forms[j] ** e
            pow_cache[(j, e)] = got
        return got

    out = PhasePoly.zero(n)
    for key, (r, i) in f.terms.items():
        piece = PhasePoly.const(CRat(Fraction(r, f.den), Fraction(i, f.den)), n)
        for j in range(m):
            if key[j]:
                piece = piece * form_pow(j, key[j])
        if key[-1]:
            piece = piece * PhasePoly.hbar(n, key[-1])
        out = out + piece
    return out


def symplectic_equivariance_residual(f: PhasePoly, g: PhasePoly, S,
                                     sign: int = -1) -> float:
    """Max coefficient modulus of (f*g) o S^-1 - (f o S^-1)*(g o S^-1).

    Zero in exact arithmetic whenever S is symplectic; raises if it is not.
    """
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {g.n}")
    if not is_symplectic(S, f.n):
        raise ValueError("S is not symplectic")
    T = _frac_inverse(_frac_matrix(S, 2 * f.n))
    lhs = compose_linear(_star_poly(f, g, sign), T)
    rhs = _star_poly(compose_linear(f, T), compose_linear(g, T), sign)
    return (lhs - rhs).max_abs_coeff()


# ---------------------------------------------------------------------------
# truncated hbar series


class HbarSeries:
    """Formal power series in hbar, truncated at a fixed order.

    ``coefficients[k]`` is the hbar^k coefficient: a PhasePoly with its
    hbar exponent identically zero.  Binary operations require equal
    truncation orders and discard every order above the truncation.
    """

    __slots__ = ("order", "coefficients")

    def __init__(self, coefficients, order: int | None = None, n: int | None = None):
        coeffs = list(coefficients)
        if not coeffs and n is None:
            raise ValueError("empty coefficient list needs an explicit dimension n")
        dim = n if n is not None else coeffs[0].n
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        coeffs = coeffs[:order + 1]
        while len(coeffs) < order + 1:
            coeffs.append(PhasePoly.zero(dim))
        for c in coeffs:
            if c.n != dim:
                raise ValueError("coefficient dimension mismatch")
            if c.hbar_degree() > 0:
                raise ValueError("series coefficients must be hbar-free")
        self.order = order
        self.coefficients = tuple(coeffs)

    @property
    def n(self) -> int:
        return self.coefficients[0].n

    @classmethod
    def from_poly(cls, poly: PhasePoly, order: int, n: int | None = None) -> "HbarSeries":
        dim = poly.n if n is None else n
        coeffs = [poly.hbar_coefficient(k) for k in range(order + 1)]
        return cls(coeffs, order, n=dim)

    def to_poly(self) -> PhasePoly:
        acc = PhasePoly.zero(self.n)
        for k, c in enumerate(self.coefficients):
            if not c.is_zero:
                acc = acc + c * PhasePoly.hbar(self.n, k)
        return acc

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        _series_check(self, other)
        return HbarSeries([a + b for a, b in zip(self.coefficients, other.coefficients)],
                          self.order)

    def __sub__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        _series_check(self, other)
        return HbarSeries([a - b for a, b in zip(self.coefficients, other.coefficients)],
                          self.order)

    def __neg__(self):
        return HbarSeries([-a for a in self.coefficients], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CRat)):
            return HbarSeries([a * other for a in self.coefficients], self.order)
        if not isinstance(other, HbarSeries):
            return NotImplemented
        _series_check(self, other)
        out = [PhasePoly.zero(self.n) for _ in range(self.order + 1)]
        for a, ca in enumerate(self.coefficients):
            if ca.is_zero:
                continue
            for b in range(self.order + 1 - a):
                cb = other.coefficients[b]
                if not cb.is_zero:
                    out[a + b] = out[a + b] + ca * cb
        return HbarSeries(out, self.order)

    __rmul__ = __mul__

    def star(self, other: "HbarSeries", sign: int = -1) -> "HbarSeries":
        return moyal_star(self, other, sign)

    def moyal_bracket(self, other: "HbarSeries", sign: int = -1) -> "HbarSeries":
        return moyal_bracket(self, other, sign)

    def __eq__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.order, self.coefficients))

    # serialization ------------------------------------------------------------

    def to_text(self) -> str:
        return f"{self.to_poly().to_text()} + O(hbar^{self.order + 1})"

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "HbarSeries":
        m = re.fullmatch(r"(.*)\s\+\sO\(hbar\^(\d+)\)\s*", text, re.DOTALL)
        if not m:
            raise ParseError("missing + O(hbar^N) truncation sentinel", len(text))
        poly = parse_expression(m.group(1), n=n)
        order = int(m.group(2)) - 1
        return cls.from_poly(poly, order, n=poly.n)

    def __repr__(self):
        return f"HbarSeries({self.to_text()!r})"


def _series_check(a: HbarSeries, b: HbarSeries):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    if a.order != b.order:
        raise ValueError(f"truncation mismatch: {a.order} vs {b.order}")


# ---------------------------------------------------------------------------
# expression parser (also used by the command line `eval`)


class ParseError(ValueError):
    """Parse failure carrying the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<imag>\d+i\b)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[()+\-*/^,])")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


_VAR_RE = re.compile(r"^([qp])([1-9][0-9]*)?$")


class _Parser:
    def __init__(self, tokens, n: int):
        self.tokens = tokens
        self.k = 0
        self.n = n

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        t = self.tokens[self.k]
        self.k += 1
        return t

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val!r}", pos)

    def parse(self) -> PhasePoly:
        out = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing {val!r}", pos)
        return out

    def expr(self) -> PhasePoly:
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> PhasePoly:
        out = self.factor()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.factor()
            if op == "*":
                out = out * rhs
            else:
                key = (0,) * (2 * self.n + 1)
                if rhs.is_zero or set(rhs.terms) != {key}:
                    raise ParseError("division only by nonzero constants", pos)
                out = out * (CRat(1) / rhs.coeff((0,) * self.n, (0,) * self.n))
        return out

    def factor(self) -> PhasePoly:
        neg = False
        while self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                neg = not neg
        out = self.power()
        return -out if neg else out

    def power(self) -> PhasePoly:
        out = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            out = out ** int(val)
        return out

    def atom(self) -> PhasePoly:
        kind, val, pos = self.take()
        if kind == "int":
            return PhasePoly.const(int(val), self.n)
        if kind == "imag":
            return PhasePoly.const(CRat(0, int(val[:-1])), self.n)
        if val == "(":
            out = self.expr()
            self.expect(")")
            return out
        if kind == "name":
            if val == "i":
                return PhasePoly.const(CRat(0, 1), self.n)
            if val == "hbar":
                return PhasePoly.hbar(self.n)
            if val in ("star", "mbracket"):
                self.expect("(")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return moyal_star(a, b) if val == "star" else moyal_bracket(a, b)
            m = _VAR_RE.match(val)
            if m:
                idx = int(m.group(2)) if m.group(2) else 1
                if idx > self.n:
                    raise ParseError(f"coordinate index {idx} exceeds dimension {self.n}", pos)
                return (PhasePoly.q(idx, self.n) if m.group(1) == "q"
                        else PhasePoly.p(idx, self.n))
            raise ParseError(f"undefined symbol {val!r}", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_expression(text: str, n: int | None = None) -> PhasePoly:
    """Parse an expression over q, p (or q1, p2, ...), hbar, i and rationals.

    Supports + - * / ^ with integer exponents, parentheses, and the calls
    star(f, g) and mbracket(f, g) with the default sign convention.
    Division is restricted to nonzero constant divisors.  When ``n`` is
    omitted it is inferred as the smallest dimension covering every
    variable mentioned in the text; pass ``n`` explicitly to round-trip
    polynomials that live in a larger phase space than they mention.
    """
    tokens = _tokenize(text)
    if n is None:
        n = 1
        for kind, val, _ in tokens:
            if kind == "name":
                m = _VAR_RE.match(val)
                if m and m.group(2):
                    n = max(n, int(m.group(2)))
    return _Parser(tokens, n).parse()
