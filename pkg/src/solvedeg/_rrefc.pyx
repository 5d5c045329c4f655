# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular row-reduction kernel.

Same contract as _rref_py.rref_mod_inplace: reduce an int64 matrix with
entries in [0, p) to reduced row echelon form mod p, in place, returning
the pivot column list. p < 2^31 keeps every product inside int64.
"""


cdef long long _modinv(long long a, long long p):
    # extended Euclid; a is nonzero mod p
    cdef long long old_r = a, r = p
    cdef long long old_s = 1, s = 0
    cdef long long q, tmp
    while r != 0:
        q = old_r / r
        tmp = old_r - q * r
        old_r = r
        r = tmp
        tmp = old_s - q * s
        old_s = s
        s = tmp
    old_s %= p
    if old_s < 0:
        old_s += p
    return old_s


def rref_mod_inplace(long long[:, ::1] a, long long p):
    """Gauss-Jordan elimination mod p; returns pivot column indices."""
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef long long v, inv, f
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        i = -1
        for k in range(r, rows):
            if a[k, c] != 0:
                i = k
                break
        if i < 0:
            continue
        if i != r:
            # columns left of c are zero in rows >= r, swap the tail only
            for j in range(c, cols):
                v = a[r, j]
                a[r, j] = a[i, j]
                a[i, j] = v
        v = a[r, c]
        if v != 1:
            inv = _modinv(v, p)
            for j in range(c, cols):
                if a[r, j] != 0:
                    a[r, j] = (a[r, j] * inv) % p
        for k in range(rows):
            if k == r:
                continue
            f = a[k, c]
            if f == 0:
                continue
            for j in range(c, cols):
                if a[r, j] != 0:
                    v = (a[k, j] - f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[k, j] = v
        pivots.append(c)
        r += 1
    return pivots


def ref_mod_inplace(long long[:, ::1] a, long long p):
    """Forward elimination mod p (no back-substitution); returns pivots.

    Rows already in echelon form with sorted pivots pass through unchanged,
    so an echelon basis stacked above new candidate rows is preserved.
    """
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef long long v, inv, f
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        i = -1
        for k in range(r, rows):
            if a[k, c] != 0:
                i = k
                break
        if i < 0:
            continue
        if i != r:
            # columns left of c are zero in rows >= r, swap the tail only
            for j in range(c, cols):
                v = a[r, j]
                a[r, j] = a[i, j]
                a[i, j] = v
        v = a[r, c]
        if v != 1:
            inv = _modinv(v, p)
            for j in range(c, cols):
                if a[r, j] != 0:
                    a[r, j] = (a[r, j] * inv) % p
        for k in range(r + 1, rows):
            f = a[k, c]
            if f == 0:
                continue
            for j in range(c, cols):
                if a[r, j] != 0:
                    v = (a[k, j] - f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[k, j] = v
        pivots.append(c)
        r += 1
    return pivots
