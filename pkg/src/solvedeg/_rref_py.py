"""Numpy reference implementation of the modular row-reduction kernel.

Entries stay in [0, p) int64; with p < 2^31 every intermediate product
fits in int64. The compiled kernel in _rrefc.pyx implements the same
contract and both must produce identical output (RREF is canonical).
"""

import numpy as np


def rref_mod_inplace(a, p):
    """Reduce a to reduced row echelon form mod p, in place.

    Returns the list of pivot column indices; after the call the first
    len(pivots) rows are the RREF rows and all later rows are zero.
    """
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        sub = a[r:, c]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        v = int(a[r, c])
        if v != 1:
            a[r, c:] = (a[r, c:] * pow(v, -1, p)) % p
        mask = a[:, c] != 0
        mask[r] = False
        if mask.any():
            a[mask, c:] = (a[mask, c:] - np.outer(a[mask, c], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def ref_mod_inplace(a, p):
    """Reduce a to (non-reduced) row echelon form mod p, in place.

    Forward elimination only: rows above the current pivot row are never
    touched, so rows that are already in echelon form with sorted pivots
    pass through unchanged. Returns the pivot column indices; the first
    len(pivots) rows are the echelon rows, all later rows are zero.
    """
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        sub = a[r:, c]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        v = int(a[r, c])
        if v != 1:
            a[r, c:] = (a[r, c:] * pow(v, -1, p)) % p
        below = a[r + 1 :, c] != 0
        if below.any():
            rows_below = a[r + 1 :]
            rows_below[below, c:] = (
                rows_below[below, c:] - np.outer(rows_below[below, c], a[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return pivots
