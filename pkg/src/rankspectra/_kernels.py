"""Compiled inner loops for projective enumeration and small-matrix ranks.

The enumeration works on the F_q-linear map ``A`` from coefficient digits to
codeword coordinates: row ``i*m + t`` of ``A`` holds the coordinates of
``lam^t * G_i``.  A projective representative with pivot ``p`` has
``x_p = 1`` and free digits for ``x_{p+1}, ..., x_{k-1}``; the digits are
stepped as an odometer (coordinate 0 of ``x_{p+1}`` moves fastest) and the
codeword is updated incrementally.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _rank_rows_generic(mat, nrows, ncols, add, mul, neg, inv):
    """Rank of the leading nrows x ncols block of ``mat`` (destroyed)."""
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if mat[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                tmp = mat[r, j]
                mat[r, j] = mat[piv, j]
                mat[piv, j] = tmp
        s = inv[mat[r, c]]
        for j in range(c, ncols):
            mat[r, j] = mul[s, mat[r, j]]
        for i in range(r + 1, nrows):
            f = mat[i, c]
            if f != 0:
                nf = neg[f]
                for j in range(c, ncols):
                    mat[i, j] = add[mat[i, j], mul[nf, mat[r, j]]]
        r += 1
        if r == nrows:
            break
    return r


@njit(cache=True)
def rank_generic(M, add, mul, neg, inv):
    work = M.copy()
    return _rank_rows_generic(work, work.shape[0], work.shape[1], add, mul, neg, inv)


@njit(cache=True)
def _rank_masks(vals, n, m, basis):
    """Rank over F_2 of n bit masks of width m."""
    for b in range(m):
        basis[b] = 0
    r = 0
    for i in range(n):
        v = vals[i]
        b = m - 1
        while v != 0 and b >= 0:
            if (v >> np.uint64(b)) & np.uint64(1):
                if basis[b] == 0:
                    basis[b] = v
                    r += 1
                    break
                v ^= basis[b]
            b -= 1
        if r == m:
            break
    return r


@njit(cache=True)
def spectrum_gf2(A, k, m, n, counts):
    """q = 2 enumeration; ``A`` has shape (k*m, n) of uint64 column masks."""
    cw = np.empty(n, dtype=np.uint64)
    basis = np.zeros(m, dtype=np.uint64)
    digits = np.zeros(k * m, dtype=np.int64)
    total = 0
    for p in range(k):
        for j in range(n):
            cw[j] = A[p * m, j]
        nfree = (k - 1 - p) * m
        for d in range(nfree):
            digits[d] = 0
        first = (p + 1) * m
        while True:
            counts[_rank_masks(cw, n, m, basis)] += 1
            total += 1
            pos = 0
            while pos < nfree:
                row = first + pos
                for j in range(n):
                    cw[j] ^= A[row, j]
                digits[pos] ^= 1
                if digits[pos] == 1:
                    break
                pos += 1
            if pos == nfree:
                break
    return total


@njit(cache=True)
def spectrum_generic(A, k, m, n, q, add, mul, neg, inv, counts):
    """General q enumeration; ``A`` has shape (k*m, n*m) of base encodings."""
    nm = n * m
    cw = np.empty(nm, dtype=np.int64)
    work = np.empty((n, m), dtype=np.int64)
    digits = np.zeros(k * m, dtype=np.int64)
    total = 0
    for p in range(k):
        for j in range(nm):
            cw[j] = A[p * m, j]
        nfree = (k - 1 - p) * m
        for d in range(nfree):
            digits[d] = 0
        first = (p + 1) * m
        while True:
            for a in range(n):
                for b in range(m):
                    work[a, b] = cw[a * m + b]
            counts[_rank_rows_generic(work, n, m, add, mul, neg, inv)] += 1
            total += 1
            pos = 0
            while pos < nfree:
                old = digits[pos]
                new = old + 1
                if new == q:
                    new = 0
                delta = add[new, neg[old]]
                row = first + pos
                for j in range(nm):
                    cw[j] = add[cw[j], mul[delta, A[row, j]]]
                digits[pos] = new
                if new != 0:
                    break
                pos += 1
            if pos == nfree:
                break
    return total


@njit(cache=True)
def weights_of_combinations(A, X, m, n, add, mul, neg, inv):
    """Rank weights of the codewords for each digit row of ``X``."""
    out = np.empty(X.shape[0], dtype=np.int64)
    nm = n * m
    cw = np.empty(nm, dtype=np.int64)
    work = np.empty((n, m), dtype=np.int64)
    for s in range(X.shape[0]):
        for j in range(nm):
            cw[j] = 0
        for r in range(X.shape[1]):
            c = X[s, r]
            if c != 0:
                for j in range(nm):
                    cw[j] = add[cw[j], mul[c, A[r, j]]]
        for a in range(n):
            for b in range(m):
                work[a, b] = cw[a * m + b]
        out[s] = _rank_rows_generic(work, n, m, add, mul, neg, inv)
    return out
