"""Dense exact linear algebra over Q and over prime fields.

Matrices are plain lists of rows; entries are ints or Fractions.  Rank and
determinant computations never touch floating point.  A modular elimination
(numpy, int64) provides a fast *sound* certificate: rank over GF(p) is a lower
bound for rank over Q, so a full-rank result mod p settles the exact rank.
Everything else falls back to fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

# Fixed prime list keeps results deterministic.  All three fit in int64 with
# room for one product: p**2 < 2**62.
CERT_PRIMES = (2_147_483_647, 2_147_483_629, 2_147_483_587)


def to_int_rows(rows):
    """Scale each row by the lcm of its denominators.

    Row scaling preserves rank and the column kernel.
    """
    out = []
    for row in rows:
        mult = 1
        for e in row:
            if isinstance(e, Fraction):
                mult = lcm(mult, e.denominator)
        if mult == 1:
            out.append([int(e) for e in row])
        else:
            out.append([int(e * mult) for e in row])
    return out


def rank_mod_p(rows, p):
    """Rank over GF(p).  Entries may be arbitrary ints (reduced here)."""
    if not rows or not rows[0]:
        return 0
    reduced = [[e % p for e in row] for row in rows]
    a = np.array(reduced, dtype=np.int64)
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        stuck = np.nonzero(a[r:, c])[0]
        if stuck.size == 0:
            continue
        i = r + int(stuck[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:, c]
        nz = np.nonzero(below)[0]
        if nz.size:
            block = a[r + 1:][nz]
            a[r + 1:][nz] = (block - np.outer(below[nz], a[r])) % p
        r += 1
    return r


def _bareiss_echelon(mat):
    """Fraction-free elimination with full pivoting.

    Returns (rank, sign, last_pivot).  `mat` is consumed (list of int lists).
    After step k every entry is a (k+1)x(k+1) minor of the input, so sizes
    stay polynomial; the exact divisions below cannot leave a remainder.
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    sign = 1
    prev = 1
    r = 0
    for _step in range(min(nrows, ncols)):
        best = None
        for i in range(r, nrows):
            row = mat[i]
            for j in range(r, ncols):
                e = row[j]
                if e:
                    a = abs(e)
                    if best is None or a < best[0]:
                        best = (a, i, j)
                        if a == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != r:
            mat[pi], mat[r] = mat[r], mat[pi]
            sign = -sign
        if pj != r:
            for row in mat:
                row[pj], row[r] = row[r], row[pj]
            sign = -sign
        piv = mat[r][r]
        prow = mat[r]
        for i in range(r + 1, nrows):
            row = mat[i]
            head = row[r]
            row[r] = 0
            if head:
                for j in range(r + 1, ncols):
                    row[j] = (row[j] * piv - head * prow[j]) // prev
            elif piv != prev:
                # Sylvester identity degenerates to a pure rescale, which is
                # still needed to keep entries equal to minors.
                for j in range(r + 1, ncols):
                    row[j] = (row[j] * piv) // prev
        prev = piv
        r += 1
    return r, sign, prev


def rank_exact(rows):
    """Exact rank over Q.

    Sound fast path: full rank over any certificate prime implies full rank
    over Q (a nonzero minor mod p is nonzero in Z).  Otherwise Bareiss.
    """
    rows = [row for row in to_int_rows(rows) if any(row)]
    if not rows:
        return 0
    full = min(len(rows), len(rows[0]))
    for p in CERT_PRIMES:
        if rank_mod_p(rows, p) == full:
            return full
    work = [list(row) for row in rows]
    r, _, _ = _bareiss_echelon(work)
    return r


def det_exact(rows):
    """Exact determinant of a square matrix with int/Fraction entries."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant needs a square matrix")
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        mult = 1
        for e in row:
            if isinstance(e, Fraction):
                mult = lcm(mult, e.denominator)
        scale *= mult
        int_rows.append([int(e * mult) for e in row])
    r, sign, last = _bareiss_echelon(int_rows)
    if r < n:
        return Fraction(0)
    return Fraction(sign * last) / scale


def rref(rows):
    """Reduced row echelon form over Q.  Returns (rank, pivot_cols, matrix)."""
    mat = [[Fraction(e) for e in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [e * inv for e in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, pivots, mat


def nullspace(rows, ncols=None):
    """Basis of the column kernel {v : M v = 0}, exact over Q."""
    if not rows:
        if ncols is None:
            return []
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    ncols = len(rows[0])
    rank, pivots, mat = rref(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][f]
        basis.append(v)
    return basis


def independent_rows_mod_p(rows, p):
    """Indices of a maximal set of rows independent over GF(p).

    Sound for exact certificates: rows independent mod p are independent
    over Q.  Used to pick a square nonsingular submatrix witness.
    """
    if not rows:
        return []
    picked = []
    basis = []  # rows of a growing echelon form, python ints mod p
    ncols = len(rows[0])
    for idx, row in enumerate(rows):
        cur = [e % p for e in row]
        for brow, bcol in basis:
            f = cur[bcol]
            if f:
                cur = [(a - f * b) % p for a, b in zip(cur, brow)]
        lead = next((j for j in range(ncols) if cur[j]), None)
        if lead is None:
            continue
        inv = pow(cur[lead], p - 2, p)
        cur = [(e * inv) % p for e in cur]
        basis.append((cur, lead))
        picked.append(idx)
    return picked
