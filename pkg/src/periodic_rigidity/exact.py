"""Exact and floating point rank / kernel routines.

Matrices are plain lists of rows.  Exact routines accept anything that
``fractions.Fraction`` can absorb (ints, Fractions); the float routines go
through numpy.
"""

from fractions import Fraction
from math import lcm

import numpy as np

FLOAT_RTOL = 1e-9


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators; rank is unchanged."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = lcm(den, x.denominator)
        out.append([int(x * den) for x in fr])
    return out


def bareiss_rank(rows):
    """Rank of an integer or rational matrix by fraction-free elimination."""
    a = _integer_rows(rows)
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            row_r, row_p = a[r], a[rank]
            # exact division is guaranteed by Sylvester's identity
            a[r] = [(p * row_r[c] - f * row_p[c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
    return rank


def rref(rows, ncols=None):
    """Reduced row echelon form over the rationals.

    Returns ``(reduced_rows, pivot_columns)``.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows, ncols):
    """Basis of ``{x : A x = 0}`` as a list of Fraction vectors of length ``ncols``."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def left_nullspace(rows, ncols):
    """Basis of ``{w : w A = 0}``; vectors have length ``len(rows)``."""
    if not rows:
        return []
    transposed = [[row[c] for row in rows] for c in range(ncols)]
    return nullspace(transposed, len(rows))


def float_rank(rows, rtol=FLOAT_RTOL):
    """Numerical rank: singular values above ``rtol`` times the largest one."""
    if not rows or not len(rows[0]):
        return 0
    a = np.asarray([[float(x) for x in row] for row in rows], dtype=float)
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def float_nullspace(rows, ncols, rtol=FLOAT_RTOL):
    """Orthonormal kernel basis from the SVD, as lists of floats."""
    if not rows:
        return np.eye(ncols).tolist()
    a = np.asarray([[float(x) for x in row] for row in rows], dtype=float)
    _, s, vt = np.linalg.svd(a)
    top = s[0] if s.size else 0.0
    r = int(np.sum(s > rtol * top)) if top > 0 else 0
    return vt[r:].tolist()


def vector_rank(vectors):
    """Rank over Q of a list of integer vectors."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return 0
    return bareiss_rank(vectors)
