"""The quantum matrix algebra obtained by deforming the Sklyanin
structure: twist matrix, R-matrix, q-commutation rewriting, RTT and
Yang-Baxter residuals, and the semiclassical limit back to the
classical bracket.

Three coefficient modes share one code path:

* rational mode: entries in RatFunc over s with q = s^2, fully exact;
* series mode: entries in HSeries with q = e^h truncated at a chosen
  order, for semiclassical statements;
* numeric mode: plain floats for spot checks at a concrete h.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactlinalg import (
    embed_two_legs,
    flip_conjugate,
    flip_matrix,
    identity,
    mat_inverse,
    mat_mul,
    mat_sub,
)
from .qscalars import HSeries, LaurentQ, RatFunc, SqrtExt
from .sklyanin import GENS, SklyaninPoly, sklyanin_bracket

__all__ = [
    "QRingRational", "QRingSeries", "QRingCommutative", "QPoly",
    "nc_normalize", "rewrite_is_confluent", "build_fhat", "build_rq",
    "explicit_rq", "qybe_residual", "unitarity_witness", "rtt_residual",
    "rtt_max_size", "quantum_determinant_central", "semiclassical_limit",
]


# --- coefficient rings ------------------------------------------------------

class QRingRational:
    """Exact rational functions of s with q = s^2."""

    mode = "rational"

    def __init__(self):
        self.one = RatFunc.from_int(1)
        self.zero = RatFunc.from_int(0)
        self.q = RatFunc.q()
        self.qinv = RatFunc.qinv()
        self.qdiff = self.q - self.qinv

    def from_fraction(self, x):
        return RatFunc.from_int(Fraction(x))


class QRingSeries:
    """Truncated h-series with q = e^h."""

    mode = "series"

    def __init__(self, order: int = 4):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.order = order
        self.one = HSeries.const(1, order)
        self.zero = HSeries.const(0, order)
        self.q = HSeries.exp(1, order)
        self.qinv = HSeries.exp(-1, order)
        self.qdiff = self.q - self.qinv

    def from_fraction(self, x):
        return HSeries.const(Fraction(x), self.order)


class QRingCommutative:
    """The q = 1 specialization; plain Fractions, relations all commute."""

    mode = "commutative"

    def __init__(self):
        self.one = Fraction(1)
        self.zero = Fraction(0)
        self.q = Fraction(1)
        self.qinv = Fraction(1)
        self.qdiff = Fraction(0)

    def from_fraction(self, x):
        return Fraction(x)


def _is_zero(x) -> bool:
    return x.is_zero if hasattr(x, "is_zero") else x == 0


# --- noncommutative polynomials over ordered monomials ----------------------

_LETTERS = "abcd"


class QPoly:
    """Noncommutative polynomial over normal-ordered monomials a^i b^j c^k d^l."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        out = {}
        if terms:
            for k, v in terms.items():
                if not _is_zero(v):
                    out[tuple(int(e) for e in k)] = v
        self.terms = out

    @classmethod
    def zero(cls, ring) -> "QPoly":
        return cls(ring)

    @classmethod
    def letter(cls, ring, name: str) -> "QPoly":
        e = [0, 0, 0, 0]
        e[_LETTERS.index(name)] = 1
        return cls(ring, {tuple(e): ring.one})

    @classmethod
    def const(cls, ring, coeff) -> "QPoly":
        return cls(ring, {(0, 0, 0, 0): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _add_term(self, key, coeff):
        w = self.terms.get(key)
        w = coeff if w is None else w + coeff
        if _is_zero(w):
            self.terms.pop(key, None)
        else:
            self.terms[key] = w

    def __add__(self, other):
        out = QPoly(self.ring, dict(self.terms))
        for k, v in other.terms.items():
            out._add_term(k, v)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QPoly(self.ring, {k: -v for k, v in self.terms.items()})

    def scale(self, s) -> "QPoly":
        return QPoly(self.ring, {k: s * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            return self.scale(other)
        out = QPoly.zero(self.ring)
        for k1, v1 in self.terms.items():
            w1 = _key_to_word(k1)
            for k2, v2 in other.terms.items():
                piece = nc_normalize(w1 + _key_to_word(k2), self.ring)
                coeff = v1 * v2
                for k, v in piece.terms.items():
                    out._add_term(k, coeff * v)
        return out

    def __rmul__(self, other):
        # coefficients are central, so scalar side does not matter
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(other.terms[k] == v for k, v in self.terms.items())

    def coeff(self, key):
        return self.terms.get(tuple(key), self.ring.zero)

    def max_size(self) -> float:
        worst = 0.0
        for v in self.terms.values():
            s = v.size() if hasattr(v, "size") else abs(float(v))
            worst = max(worst, s)
        return worst

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            bits.append(_term_text(self.terms[k], k))
        text = bits[0]
        for b in bits[1:]:
            text += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return text

    def __repr__(self):
        return f"QPoly({self.to_text()!r})"


def _key_to_word(key):
    out = []
    for letter, e in enumerate(key):
        out.extend([letter] * e)
    return tuple(out)


def _mono_text(key) -> str:
    return "*".join(
        (n if e == 1 else f"{n}^{e}")
        for n, e in zip(_LETTERS, key) if e
    )


def _laurent_q_text(p: LaurentQ) -> str:
    """Render a Laurent polynomial in s with even powers using q = s^2."""
    bits = []
    for k in sorted(p.c, reverse=True):
        v = p.c[k]
        if k % 2:
            sym = f"q^{Fraction(k, 2)}"
        elif k == 0:
            sym = ""
        elif k == 2:
            sym = "q"
        else:
            sym = f"q^{k // 2}"
        if not sym:
            bits.append(f"{v}")
        elif v == 1:
            bits.append(sym)
        elif v == -1:
            bits.append(f"-{sym}")
        else:
            bits.append(f"{v}*{sym}")
    if not bits:
        return "0"
    text = bits[0]
    for b in bits[1:]:
        text += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
    return text


def _coeff_text(v) -> str:
    if isinstance(v, RatFunc):
        if v.den == LaurentQ.one():
            return _laurent_q_text(v.num)
        return f"({_laurent_q_text(v.num)})/({_laurent_q_text(v.den)})"
    if isinstance(v, Fraction):
        return str(v)
    return v.to_text() if hasattr(v, "to_text") else str(v)


def _term_text(v, key) -> str:
    mono = _mono_text(key)
    text = _coeff_text(v)
    if not mono:
        return f"({text})" if (" " in text) else text
    if text == "1":
        return mono
    if text == "-1":
        return f"-{mono}"
    if " " in text:
        neg = text.startswith("-")
        if neg:
            inner = _coeff_text(-v)
            return f"-({inner})*{mono}"
        return f"({text})*{mono}"
    return f"{text}*{mono}"


# --- the rewrite system -----------------------------------------------------

def _descent(word, strategy: str):
    rng = range(len(word) - 1)
    if strategy == "rightmost":
        rng = reversed(rng)
    for t in rng:
        if word[t] > word[t + 1]:
            return t
    return None


def nc_normalize(word, ring, strategy: str = "leftmost") -> QPoly:
    """Unique normal form of a word in a, b, c, d over ordered monomials.

    Rewrites (letters 0..3 standing for a..d):
      ba -> q^-1 ab,  ca -> q^-1 ac,  cb -> bc,
      db -> q^-1 bd,  dc -> q^-1 cd,  da -> ad - (q - q^-1) bc.
    Degree-lex strictly decreases, so rewriting terminates; the result
    does not depend on the descent strategy (confluence is checked
    exhaustively in the test suite and via rewrite_is_confluent).
    """
    if isinstance(word, str):
        word = tuple(_LETTERS.index(ch) for ch in word if not ch.isspace())
    else:
        word = tuple(int(x) for x in word)
    out = QPoly.zero(ring)
    stack = [(word, ring.one)]
    while stack:
        w, cf = stack.pop()
        t = _descent(w, strategy)
        if t is None:
            key = [0, 0, 0, 0]
            for letter in w:
                key[letter] += 1
            out._add_term(tuple(key), cf)
            continue
        x, y = w[t], w[t + 1]
        head, tail = w[:t], w[t + 2:]
        if (x, y) == (3, 0):
            stack.append((head + (0, 3) + tail, cf))
            stack.append((head + (1, 2) + tail, -(cf * ring.qdiff)))
        elif (x, y) == (2, 1):
            stack.append((head + (1, 2) + tail, cf))
        else:
            stack.append((head + (y, x) + tail, cf * ring.qinv))
    return out


def rewrite_is_confluent(max_len: int = 4, ring=None) -> bool:
    """Exhaustively compare leftmost vs rightmost normalization on all
    words of length <= max_len."""
    if ring is None:
        ring = QRingRational()
    words = [()]
    for _ in range(max_len):
        words = [w + (letter,) for w in words for letter in range(4)]
        for w in words:
            if nc_normalize(w, ring, "leftmost") != nc_normalize(w, ring, "rightmost"):
                return False
    return True


# --- twist and R-matrix -----------------------------------------------------

def build_fhat(h: float | None = None, order: int | None = None):
    """The explicit 4x4 twist F = e^(-(h/2) flip) * M with
    M = [[sqrt(q),0,0,0],[0,1/u,0,0],[0,v,u,0],[0,0,0,sqrt(q)]],
    q = e^h, u = sqrt(2/(q+1/q)), v = (q-1/q)/sqrt(2(q+1/q)).

    Modes: no arguments -> exact rational mode over s = q^(1/2) extended
    by w = sqrt((q+1/q)/2); order=N -> h-series mode truncated at N
    (N >= 2 required); h=float -> numeric mode.
    """
    if order is not None:
        if order < 2:
            raise ValueError("series mode needs truncation order >= 2")
        q = HSeries.exp(1, order)
        qinv = HSeries.exp(-1, order)
        sqrt_q = HSeries.exp(Fraction(1, 2), order)
        uinv = ((q + qinv) * HSeries.const(Fraction(1, 2), order)).sqrt()
        u = uinv.inverse()
        v = (q - qinv) * HSeries.const(Fraction(1, 2), order) * u
        ch = (HSeries.exp(Fraction(1, 2), order)
              + HSeries.exp(Fraction(-1, 2), order)) * HSeries.const(Fraction(1, 2), order)
        sh = (HSeries.exp(Fraction(1, 2), order)
              - HSeries.exp(Fraction(-1, 2), order)) * HSeries.const(Fraction(1, 2), order)
        one, zero = HSeries.const(1, order), HSeries.const(0, order)
    elif h is not None:
        q = math.exp(h)
        sqrt_q = math.exp(h / 2)
        u = math.sqrt(2.0 / (q + 1.0 / q))
        uinv = 1.0 / u
        v = (q - 1.0 / q) / math.sqrt(2.0 * (q + 1.0 / q))
        ch, sh = math.cosh(h / 2), math.sinh(h / 2)
        one, zero = 1.0, 0.0
    else:
        s = RatFunc.s_power(1)
        sinv = RatFunc.s_power(-1)
        q, qinv = RatFunc.q(), RatFunc.qinv()
        half = RatFunc(LaurentQ.from_fraction(Fraction(1, 2)))
        mod = (q + qinv) * half
        w = SqrtExt.root(mod)          # w^2 = (q+1/q)/2, so w = 1/u
        uinv = w
        u = w / SqrtExt.lift(mod, mod)
        v = SqrtExt.lift((q - qinv) * half, mod) * u
        sqrt_q = SqrtExt.lift(s, mod)
        ch = SqrtExt.lift((s + sinv) * half, mod)
        sh = SqrtExt.lift((s - sinv) * half, mod)
        one = SqrtExt.lift(RatFunc.from_int(1), mod)
        zero = SqrtExt.lift(RatFunc.from_int(0), mod)

    sigma = flip_matrix(one, zero)
    expo = [[ch * one if i == j else zero for j in range(4)] for i in range(4)]
    expo = mat_sub(expo, [[sh * x for x in row] for row in sigma])
    m = [[sqrt_q, zero, zero, zero],
         [zero, uinv, zero, zero],
         [zero, v, u, zero],
         [zero, zero, zero, sqrt_q]]
    return mat_mul(expo, m)


def _one_zero_like(entry):
    if isinstance(entry, SqrtExt):
        mod = entry.mod
        return SqrtExt.lift(RatFunc.from_int(1), mod), SqrtExt.lift(RatFunc.from_int(0), mod)
    if isinstance(entry, HSeries):
        return HSeries.const(1, entry.order), HSeries.const(0, entry.order)
    if isinstance(entry, RatFunc):
        return RatFunc.from_int(1), RatFunc.from_int(0)
    if isinstance(entry, Fraction):
        return Fraction(1), Fraction(0)
    return 1.0, 0.0


def build_rq(fhat=None, h: float | None = None, order: int | None = None):
    """R = sqrt(q) * flip(F^-1) * e^((flip - I/2) h) * F.

    In rational mode every entry collapses back to a rational function
    of q (the square-root extension cancels); the returned matrix then
    has RatFunc entries and equals explicit_rq() exactly.
    """
    if fhat is None:
        fhat = build_fhat(h=h, order=order)
    entry = fhat[0][0]
    one, zero = _one_zero_like(entry)
    finv = mat_inverse(fhat, one, zero)
    left = flip_conjugate(finv)

    if isinstance(entry, SqrtExt):
        mod = entry.mod
        q, qinv = RatFunc.q(), RatFunc.qinv()
        half = RatFunc(LaurentQ.from_fraction(Fraction(1, 2)))
        ch = SqrtExt.lift((q + qinv) * half, mod)
        sh = SqrtExt.lift((q - qinv) * half, mod)
        # sqrt(q) * e^(-h/2) = 1 exactly, so only e^(h flip) remains
        pref = one
    elif isinstance(entry, HSeries):
        order = entry.order
        q, qinv = HSeries.exp(1, order), HSeries.exp(-1, order)
        half = HSeries.const(Fraction(1, 2), order)
        ch = (q + qinv) * half
        sh = (q - qinv) * half
        pref = HSeries.exp(Fraction(1, 2), order) * HSeries.exp(Fraction(-1, 2), order)
    else:
        if h is None:
            raise ValueError("numeric mode needs the deformation value h")
        ch, sh = math.cosh(h), math.sinh(h)
        pref = 1.0

    sigma = flip_matrix(one, zero)
    mid = [[ch * one if i == j else zero for j in range(4)] for i in range(4)]
    for i in range(4):
        for j in range(4):
            mid[i][j] = mid[i][j] + sh * sigma[i][j]

    r = mat_mul(left, mat_mul(mid, fhat))
    r = [[pref * x for x in row] for row in r]

    if isinstance(entry, SqrtExt):
        out = []
        for row in r:
            flat = []
            for x in row:
                if not x.y.is_zero:
                    raise ArithmeticError("square-root extension failed to cancel")
                flat.append(x.x)
            out.append(flat)
        return out
    return r


def explicit_rq(ring=None):
    """The closed-form R-matrix [[q,0,0,0],[0,1,0,0],[0,q-1/q,1,0],[0,0,0,q]]."""
    if ring is None:
        ring = QRingRational()
    o, z = ring.one, ring.zero
    return [
        [ring.q, z, z, z],
        [z, o, z, z],
        [z, ring.qdiff, o, z],
        [z, z, z, ring.q],
    ]


def qybe_residual(r) -> float:
    """Max entry size of R12 R13 R23 - R23 R13 R12 in the triple tensor."""
    one, zero = _one_zero_like(r[0][0])
    r12 = embed_two_legs(r, 0, 1, 3, one, zero)
    r13 = embed_two_legs(r, 0, 2, 3, one, zero)
    r23 = embed_two_legs(r, 1, 2, 3, one, zero)
    lhs = mat_mul(r12, mat_mul(r13, r23))
    rhs = mat_mul(r23, mat_mul(r13, r12))
    diff = mat_sub(lhs, rhs)
    worst = 0.0
    for row in diff:
        for x in row:
            s = x.size() if hasattr(x, "size") else abs(float(x))
            worst = max(worst, s)
    return worst


def unitarity_witness(r):
    """Size and location of the largest entry of R * flip(R) - I.

    Nonzero for the deformed R-matrix whenever q != 1: this R solves
    the Yang-Baxter equation but not the unitarity condition.
    """
    one, zero = _one_zero_like(r[0][0])
    prod = mat_mul(r, flip_conjugate(r))
    diff = mat_sub(prod, identity(4, one, zero))
    worst, where, val = 0.0, None, None
    for i, row in enumerate(diff):
        for j, x in enumerate(row):
            s = x.size() if hasattr(x, "size") else abs(float(x))
            if s > worst:
                worst, where, val = s, (i, j), x
    text = None
    if val is not None:
        text = val.to_text() if hasattr(val, "to_text") else repr(val)
    return worst, where, text


# --- RTT relations -----------------------------------------------------------

def _t_matrices(ring):
    t = [[QPoly.letter(ring, "a"), QPoly.letter(ring, "b")],
         [QPoly.letter(ring, "c"), QPoly.letter(ring, "d")]]
    zero = QPoly.zero(ring)
    t1 = [[t[i][j] if k == l else zero
           for j in range(2) for l in range(2)]
          for i in range(2) for k in range(2)]
    t2 = [[t[k][l] if i == j else zero
           for j in range(2) for l in range(2)]
          for i in range(2) for k in range(2)]
    return t1, t2


def rtt_residual(r=None, ring=None):
    """The 16 normal-formed entries of R T1 T2 - T2 T1 R.

    All vanish identically for the closed-form R-matrix together with
    the six rewrite relations; a generic R (e.g. the identity at q != 1)
    leaves nonzero entries, which callers use as a negative control.
    """
    if ring is None:
        ring = QRingRational()
    if r is None:
        r = explicit_rq(ring)
    t1, t2 = _t_matrices(ring)
    lhs = mat_mul([[QPoly.const(ring, x) for x in row] for row in r],
                  mat_mul(t1, t2))
    rhs = mat_mul(mat_mul(t2, t1),
                  [[QPoly.const(ring, x) for x in row] for row in r])
    return mat_sub(lhs, rhs)


def rtt_max_size(residual) -> float:
    return max(entry.max_size() for row in residual for entry in row)


def quantum_determinant_central(ring=None) -> bool:
    """Check that ad - q bc commutes with all four generators."""
    if ring is None:
        ring = QRingRational()
    det = QPoly(ring, {(1, 0, 0, 1): ring.one, (0, 1, 1, 0): -ring.q})
    for name in _LETTERS:
        x = QPoly.letter(ring, name)
        if not (det * x - x * det).is_zero:
            return False
    return True


def semiclassical_limit(x: str, y: str, order: int = 4) -> SklyaninPoly:
    """h^1 coefficient of the commutator [x, y] in the series ring,
    abelianized to a commutative polynomial.

    Equals sklyanin_bracket on generators; the truncation order must be
    at least 3 so that q - 1/q = 2h + O(h^3) is resolved past leading
    order.
    """
    if order < 3:
        raise ValueError("semiclassical extraction needs series order >= 3")
    ring = QRingSeries(order)
    xp = QPoly.letter(ring, x)
    yp = QPoly.letter(ring, y)
    comm = xp * yp - yp * xp
    out = {}
    for key, coeff in comm.terms.items():
        if coeff.coeff(0) != 0:
            raise ArithmeticError("commutator has a nonzero classical term")
        c1 = coeff.coeff(1)
        if c1:
            out[key] = c1
    return SklyaninPoly(out)
