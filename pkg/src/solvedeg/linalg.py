"""Dense linear algebra over F_p on int64 numpy matrices.

The row-reduction core is the package's hot loop. At import time the
compiled Cython kernel is selected when present; setting
SOLVEDEG_PURE_PYTHON=1 in the environment forces the numpy fallback.
Both backends implement the same in-place contract and produce identical
matrices (RREF is canonical for a rowspace and column order).
"""

import os

import numpy as np

from . import _rref_py

if os.environ.get("SOLVEDEG_PURE_PYTHON"):
    _backend = _rref_py
    BACKEND = "python"
else:
    try:
        from . import _rrefc as _backend

        BACKEND = "compiled"
    except ImportError:
        _backend = _rref_py
        BACKEND = "python"


def _as_matrix(a):
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2D matrix")
    return a


def rref_mod(a, p, copy=True):
    """RREF of a mod p. Returns (pivot_rows_matrix, pivot_columns)."""
    a = _as_matrix(a)
    if copy:
        a = a.copy()
    if a.size:
        np.mod(a, p, out=a)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a[:0], []
    pivots = _backend.rref_mod_inplace(a, p)
    return a[: len(pivots)], list(pivots)


def ref_mod(a, p, copy=True):
    """Echelon form of a mod p, forward elimination only.

    Returns (echelon_rows_matrix, pivot_columns). Unlike rref_mod the rows
    are not back-substituted, so a stacked [echelon_basis; candidates]
    matrix keeps the basis rows byte-identical.
    """
    a = _as_matrix(a)
    if copy:
        a = a.copy()
    if a.size:
        np.mod(a, p, out=a)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a[:0], []
    pivots = _backend.ref_mod_inplace(a, p)
    return a[: len(pivots)], list(pivots)


def rank_mod(a, p):
    _, pivots = rref_mod(a, p)
    return len(pivots)


def nullspace_mod(a, p):
    """Basis of the right kernel of a mod p, one row per basis vector.

    Built from the RREF: each non-pivot column yields a vector with a 1
    there and minus the reduced column at the pivot positions.
    """
    a = _as_matrix(a)
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    red, pivots = rref_mod(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for r, pc in enumerate(pivots):
            v = int(red[r, c])
            if v:
                basis[k, pc] = p - v
    return basis


def reduce_vector(basis, pivots, v, p):
    """Reduce the vector v against RREF rows, returning the remainder."""
    v = np.array(v, dtype=np.int64) % p
    for r, c in enumerate(pivots):
        f = int(v[c])
        if f:
            v = (v - f * basis[r]) % p
    return v
