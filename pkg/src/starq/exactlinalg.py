"""Dense matrix helpers over arbitrary exact scalar rings.

Matrices are plain lists of lists.  Entries only need +, -, *, and
(for inversion) /, plus equality against each other.  Works uniformly
for Fraction, LaurentQ, RatFunc, HSeries and SqrtExt entries, which is
the whole point: the quantum-group computations run once over rational
functions and once over truncated series without code changes.
"""

from __future__ import annotations

__all__ = [
    "mat_add", "mat_sub", "mat_neg", "mat_scale", "mat_mul", "mat_eq",
    "mat_commutator", "mat_is_zero", "kron", "identity", "mat_inverse",
    "flip_matrix", "flip_conjugate", "embed_two_legs",
]


def _is_zero(x) -> bool:
    return x.is_zero if hasattr(x, "is_zero") else x == 0


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_scale(a, s):
    return [[s * x for x in row] for row in a]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_eq(a, b) -> bool:
    if len(a) != len(b):
        return False
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_is_zero(a) -> bool:
    return all(_is_zero(x) for row in a for x in row)


def kron(a, b):
    nb = len(b)
    mb = len(b[0])
    out = []
    for ra in a:
        for rb in b:
            out.append([x * y for x in ra for y in rb])
    return out


def identity(n: int, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_inverse(a, one, zero):
    """Gauss-Jordan inverse; entries must support exact division."""
    n = len(a)
    work = [list(row) for row in a]
    inv = identity(n, one, zero)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not _is_zero(work[r][col])), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and not _is_zero(work[r][col]):
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def flip_matrix(one, zero):
    """The tensor-swap permutation on C^2 (x) C^2 in the (00,01,10,11) basis."""
    return [
        [one, zero, zero, zero],
        [zero, zero, one, zero],
        [zero, one, zero, zero],
        [zero, zero, zero, one],
    ]


def flip_conjugate(m):
    """Swap the two tensor legs of a 4x4 matrix: entry (i k),(j l) -> (k i),(l j)."""
    def s(idx):
        i, k = divmod(idx, 2)
        return 2 * k + i
    return [[m[s(r)][s(c)] for c in range(4)] for r in range(4)]


def embed_two_legs(m, leg_a: int, leg_b: int, n_legs: int, one, zero):
    """Embed a two-leg operator on C^2 tensor factors leg_a < leg_b into n_legs.

    Entry at multi-indices (i_0..i_{n-1}),(j_0..j_{n-1}) equals
    m[(i_a i_b), (j_a j_b)] when every other leg has i_k == j_k, else zero.
    """
    if not (0 <= leg_a < leg_b < n_legs):
        raise ValueError("legs must satisfy 0 <= leg_a < leg_b < n_legs")
    dim = 2 ** n_legs

    def bits(x):
        return [(x >> (n_legs - 1 - t)) & 1 for t in range(n_legs)]

    out = []
    for r in range(dim):
        ri = bits(r)
        row = []
        for c in range(dim):
            ci = bits(c)
            if all(ri[t] == ci[t] for t in range(n_legs) if t not in (leg_a, leg_b)):
                row.append(m[2 * ri[leg_a] + ri[leg_b]][2 * ci[leg_a] + ci[leg_b]])
            else:
                row.append(zero)
        out.append(row)
    return out
