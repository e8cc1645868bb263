"""Sklyanin Poisson algebra on the 2x2 matrix coordinates a, b, c, d.

The bracket is given on generators by a fixed table and extended to
polynomials by bilinearity and Leibniz; the matrix form {T (x) T} =
[rhat, T (x) T] reproduces the same table entry-by-entry, which the
test suite checks exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .exactlinalg import mat_mul, mat_sub
from .sl2 import rhat

__all__ = [
    "SklyaninPoly", "GENS", "sklyanin_bracket",
    "bracket_matrix_form_residuals", "jacobi_residual", "casimir_residual",
]

GENS = ("a", "b", "c", "d")


class SklyaninPoly:
    """Commutative polynomial in a, b, c, d with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms:
            for k, v in terms.items():
                v = Fraction(v)
                if v:
                    out[tuple(int(e) for e in k)] = v
        self.terms = out

    @classmethod
    def zero(cls) -> "SklyaninPoly":
        return cls()

    @classmethod
    def const(cls, x) -> "SklyaninPoly":
        return cls({(0, 0, 0, 0): Fraction(x)})

    @classmethod
    def gen(cls, name: str) -> "SklyaninPoly":
        e = [0, 0, 0, 0]
        e[GENS.index(name)] = 1
        return cls({tuple(e): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, Fraction(0)) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        r = SklyaninPoly.__new__(SklyaninPoly)
        r.terms = out
        return r

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        r = SklyaninPoly.__new__(SklyaninPoly)
        r.terms = {k: -v for k, v in self.terms.items()}
        return r

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SklyaninPoly.const(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(e1 + e2 for e1, e2 in zip(k1, k2))
                w = out.get(k, Fraction(0)) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        r = SklyaninPoly.__new__(SklyaninPoly)
        r.terms = out
        return r

    __rmul__ = __mul__

    def diff(self, var: int) -> "SklyaninPoly":
        out = {}
        for k, v in self.terms.items():
            if k[var]:
                kk = list(k)
                kk[var] -= 1
                out[tuple(kk)] = v * k[var]
        r = SklyaninPoly.__new__(SklyaninPoly)
        r.terms = out
        return r

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_abs_coeff(self) -> Fraction:
        return max((abs(v) for v in self.terms.values()), default=Fraction(0))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            v = self.terms[k]
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}")
                for n, e in zip(GENS, k) if e
            )
            if not mono:
                bits.append(f"{v}")
            elif v == 1:
                bits.append(mono)
            elif v == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{v}*{mono}")
        text = bits[0]
        for b in bits[1:]:
            text += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return text

    def __repr__(self):
        return f"SklyaninPoly({self.to_text()!r})"


def _coerce(x) -> SklyaninPoly:
    if isinstance(x, SklyaninPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return SklyaninPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to SklyaninPoly")


# bracket table on generator pairs (u < v); {a,b}=ab, {a,c}=ac, {a,d}=2bc,
# {b,c}=0, {b,d}=bd, {c,d}=cd
_PI = {
    (0, 1): SklyaninPoly({(1, 1, 0, 0): 1}),
    (0, 2): SklyaninPoly({(1, 0, 1, 0): 1}),
    (0, 3): SklyaninPoly({(0, 1, 1, 0): 2}),
    (1, 2): SklyaninPoly.zero(),
    (1, 3): SklyaninPoly({(0, 1, 0, 1): 1}),
    (2, 3): SklyaninPoly({(0, 0, 1, 1): 1}),
}


def sklyanin_bracket(f: SklyaninPoly, g: SklyaninPoly) -> SklyaninPoly:
    """Poisson bracket extending the generator table by Leibniz."""
    out = SklyaninPoly.zero()
    for (u, v), pi in _PI.items():
        if pi.is_zero:
            continue
        out = out + pi * (f.diff(u) * g.diff(v) - f.diff(v) * g.diff(u))
    return out


def bracket_matrix_form_residuals():
    """Entry-wise difference between {T (x) T} and [rhat, T (x) T].

    T = [[a,b],[c,d]]; in the tensor square the (i k),(j l) entry of the
    left side is {T_ij, T_kl} and of the right side the commutator with
    the 4x4 r-matrix image.  Returns a 4x4 matrix of SklyaninPoly
    differences, all zero when the table matches the matrix identity.
    """
    t = [[SklyaninPoly.gen("a"), SklyaninPoly.gen("b")],
         [SklyaninPoly.gen("c"), SklyaninPoly.gen("d")]]
    tt = [[t[i][j] * t[k][l]
           for j in range(2) for l in range(2)]
          for i in range(2) for k in range(2)]
    lhs = [[sklyanin_bracket(t[i][j], t[k][l])
            for j in range(2) for l in range(2)]
           for i in range(2) for k in range(2)]
    r = rhat()
    rhs = mat_sub(mat_mul(r, tt), mat_mul(tt, r))
    return mat_sub(lhs, rhs)


def jacobi_residual() -> Fraction:
    """Max coefficient of the cyclic Jacobi sum over all generator triples."""
    gens = [SklyaninPoly.gen(n) for n in GENS]
    worst = Fraction(0)
    for i in range(4):
        for j in range(4):
            for k in range(4):
                x, y, z = gens[i], gens[j], gens[k]
                s = sklyanin_bracket(sklyanin_bracket(x, y), z)
                s = s + sklyanin_bracket(sklyanin_bracket(y, z), x)
                s = s + sklyanin_bracket(sklyanin_bracket(z, x), y)
                worst = max(worst, s.max_abs_coeff())
    return worst


def casimir_residual() -> Fraction:
    """Max coefficient of {ad - bc, x} over all generators x."""
    det = (SklyaninPoly.gen("a") * SklyaninPoly.gen("d")
           - SklyaninPoly.gen("b") * SklyaninPoly.gen("c"))
    worst = Fraction(0)
    for n in GENS:
        worst = max(worst,
                    sklyanin_bracket(det, SklyaninPoly.gen(n)).max_abs_coeff())
    return worst
