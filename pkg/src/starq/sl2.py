"""Classical sl(2) data: structure constants, 2x2 representation,
the skew r-matrix, and exact Schouten-bracket checks.

Everything here is exact over Fraction.  The quantum deformation built
on top of this lives in slq2; the Poisson side lives in sklyanin.
"""

from __future__ import annotations

from fractions import Fraction

from .exactlinalg import (
    embed_two_legs,
    flip_conjugate,
    identity,
    kron,
    mat_add,
    mat_commutator,
    mat_eq,
    mat_neg,
    mat_scale,
    mat_sub,
)

__all__ = [
    "BASIS", "Sl2Element", "rep_matrix", "OFFDIAG_H_CANDIDATE",
    "rep_bracket_residual", "rhat", "invariant_two_tensor",
    "schouten_bracket_rep", "ad3_invariance_residual",
    "schouten_vs_invariant_tensor",
]

BASIS = ("H", "Xp", "Xm")

_F0, _F1 = Fraction(0), Fraction(1)

# bracket table on basis indices (0=H, 1=Xp, 2=Xm); values are coefficient
# triples of the result: [H,Xp]=2Xp, [H,Xm]=-2Xm, [Xp,Xm]=H
_TABLE = {
    (0, 1): (Fraction(0), Fraction(2), Fraction(0)),
    (0, 2): (Fraction(0), Fraction(0), Fraction(-2)),
    (1, 2): (Fraction(1), Fraction(0), Fraction(0)),
}


def _table(i: int, j: int):
    if i == j:
        return (_F0, _F0, _F0)
    if (i, j) in _TABLE:
        return _TABLE[(i, j)]
    return tuple(-x for x in _TABLE[(j, i)])


class Sl2Element:
    """Element of sl(2) as exact coefficients over the (H, Xp, Xm) basis."""

    __slots__ = ("coeffs",)

    def __init__(self, h=0, xp=0, xm=0):
        self.coeffs = (Fraction(h), Fraction(xp), Fraction(xm))

    @classmethod
    def basis(cls, name: str) -> "Sl2Element":
        idx = BASIS.index(name)
        args = [0, 0, 0]
        args[idx] = 1
        return cls(*args)

    def bracket(self, other: "Sl2Element") -> "Sl2Element":
        out = [Fraction(0)] * 3
        for i, ci in enumerate(self.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(other.coeffs):
                if not cj:
                    continue
                t = _table(i, j)
                for k in range(3):
                    out[k] += ci * cj * t[k]
        return Sl2Element(*out)

    def __add__(self, other):
        return Sl2Element(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return Sl2Element(*(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Sl2Element(*(-a for a in self.coeffs))

    def scale(self, s) -> "Sl2Element":
        s = Fraction(s)
        return Sl2Element(*(s * a for a in self.coeffs))

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Sl2Element):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        bits = [f"{c}*{n}" for c, n in zip(self.coeffs, BASIS) if c]
        return "Sl2Element(" + (" + ".join(bits) if bits else "0") + ")"


# 2x2 fundamental representation.  The Cartan image must be diag(1,-1):
# it is the only choice consistent with [rep(Xp), rep(Xm)] = rep(H) and
# [rep(H), rep(Xpm)] = +-2 rep(Xpm) given the raising/lowering matrices.
_REP = {
    "H": [[_F1, _F0], [_F0, -_F1]],
    "Xp": [[_F0, _F1], [_F0, _F0]],
    "Xm": [[_F0, _F0], [_F1, _F0]],
}

# Off-diagonal candidate for the Cartan image.  It fails the bracket
# consistency check below and is retained only as a negative control
# that verification reports surface explicitly.
OFFDIAG_H_CANDIDATE = [[_F0, _F1], [-_F1, _F0]]


def rep_matrix(name: str):
    return [row[:] for row in _REP[name]]


def rep_bracket_residual(h_matrix=None) -> Fraction:
    """Max |entry| over the three bracket-consistency defects.

    Checks [rho(H), rho(Xp)] - 2 rho(Xp), [rho(H), rho(Xm)] + 2 rho(Xm)
    and [rho(Xp), rho(Xm)] - rho(H) with rho(H) replaced by h_matrix
    when given.  Returns 0 for the adopted diagonal choice.
    """
    h = [row[:] for row in (h_matrix if h_matrix is not None else _REP["H"])]
    xp, xm = rep_matrix("Xp"), rep_matrix("Xm")
    defects = [
        mat_sub(mat_commutator(h, xp), mat_scale(xp, Fraction(2))),
        mat_add(mat_commutator(h, xm), mat_scale(xm, Fraction(2))),
        mat_sub(mat_commutator(xp, xm), h),
    ]
    worst = Fraction(0)
    for d in defects:
        for row in d:
            for x in row:
                if abs(x) > worst:
                    worst = abs(x)
    return worst


def rhat():
    """Image of the skew r-matrix Xp^Xm in the tensor square: 4x4 exact."""
    return mat_sub(kron(rep_matrix("Xp"), rep_matrix("Xm")),
                   kron(rep_matrix("Xm"), rep_matrix("Xp")))


def invariant_two_tensor():
    """Image of the symmetric invariant (1/2)H(x)H + Xp(x)Xm + Xm(x)Xp.

    Equals flip - I/2 in the tensor square; ad-invariant under all
    generators.  This is the t entering e^(ht) in the R-matrix formula.
    """
    t = mat_scale(kron(rep_matrix("H"), rep_matrix("H")), Fraction(1, 2))
    t = mat_add(t, kron(rep_matrix("Xp"), rep_matrix("Xm")))
    t = mat_add(t, kron(rep_matrix("Xm"), rep_matrix("Xp")))
    return t


def schouten_bracket_rep(r):
    """[[r,r]] = [r12,r13] + [r12,r23] + [r13,r23] in the triple tensor.

    r must be 4x4 and antisymmetric under the flip; raises ValueError
    otherwise.  Entries are exact.
    """
    if not mat_eq(flip_conjugate(r), mat_neg(r)):
        raise ValueError("r is not antisymmetric under the tensor flip")
    one, zero = _F1, _F0
    r12 = embed_two_legs(r, 0, 1, 3, one, zero)
    r13 = embed_two_legs(r, 0, 2, 3, one, zero)
    r23 = embed_two_legs(r, 1, 2, 3, one, zero)
    out = mat_commutator(r12, r13)
    out = mat_add(out, mat_commutator(r12, r23))
    out = mat_add(out, mat_commutator(r13, r23))
    return out


def _leg_action(x_name: str):
    """rho(X) acting on leg 0 + leg 1 + leg 2 of the triple tensor."""
    x = rep_matrix(x_name)
    i2 = identity(2, _F1, _F0)
    i4 = identity(4, _F1, _F0)
    total = kron(kron(x, i2), i2)
    total = mat_add(total, kron(i2, kron(x, i2)))
    total = mat_add(total, kron(i4, x))
    return total


def ad3_invariance_residual(t8) -> Fraction:
    """Max |entry| of [t8, rho(X) acting on any single leg summed] over X."""
    worst = Fraction(0)
    for name in BASIS:
        d = mat_commutator(t8, _leg_action(name))
        for row in d:
            for v in row:
                if abs(v) > worst:
                    worst = abs(v)
    return worst


def schouten_vs_invariant_tensor() -> bool:
    """Check [[r,r]] == -[t13, t23] with t the invariant two-tensor."""
    rr = schouten_bracket_rep(rhat())
    t = invariant_two_tensor()
    t13 = embed_two_legs(t, 0, 2, 3, _F1, _F0)
    t23 = embed_two_legs(t, 1, 2, 3, _F1, _F0)
    return mat_eq(rr, mat_neg(mat_commutator(t13, t23)))
