"""Gauss-Jordan elimination over any exact field (Fraction, Scalar)."""
from __future__ import annotations

from fractions import Fraction

from .errors import RankMismatch, SingularMatrix


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(r) for r in zip(*m)]


def matmul(a, b):
    if a and len(a[0]) != len(b):
        raise RankMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), 0 * a[i][0])
             for j in range(cols)] for i in range(len(a))]


def _rref(m):
    """Reduced row echelon form of a copy of ``m``; returns (rows, pivots)."""
    rows = [list(r) for r in m]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m):
    return len(_rref(m)[1]) if m else 0


def inverse(m, one=None, zero=None):
    n = len(m)
    if any(len(r) != n for r in m):
        raise RankMismatch("inverse of a non-square matrix")
    one = one if one is not None else m[0][0] ** 0 if n else Fraction(1)
    zero = zero if zero is not None else one - one
    aug = [list(m[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    rows, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [r[n:] for r in rows]


def solve(m, b):
    """Unique solution of ``m x = b`` for square invertible ``m``."""
    inv = inverse(m)
    return [sum((inv[i][k] * b[k] for k in range(len(b))), 0 * b[0]) for i in range(len(inv))]


def left_inverse(m):
    """A rational ``L`` with ``L m = 1`` for ``m`` of full column rank.

    Uses ``(m^T m)^-1 m^T``, which exists exactly when the columns are
    independent.
    """
    mt = transpose(m)
    gram = matmul(mt, m)
    return matmul(inverse(gram), mt)


def is_identity(m):
    return all((m[i][j] == 1) if i == j else not m[i][j]
               for i in range(len(m)) for j in range(len(m[i])))


def fraction_matrix(rows):
    return [[Fraction(x) for x in r] for r in rows]
