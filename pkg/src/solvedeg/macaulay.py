"""Macaulay matrices and their closure under monomial multiplication.

build_macaulay assembles the degree-d matrix whose rows are u*f for the
generators f and all monomial multipliers u with deg(u*f) <= d, columns
the monomials of degree <= d in decreasing order. lazard_closure iterates
row reduction with re-multiplication of low-degree rows until the
rowspace stabilizes; the result is presented as the canonical reduced row
echelon basis of the fixpoint space.

The closure loop itself works on the forward echelon form, without
back-substitution, so inserted rows are immutable and each is multiplied
out exactly once. This matters beyond speed: back-substitution can
manufacture rows of lower degree than any inserted row (eliminating a
high pivot from a high-degree row can cancel its top part), and under lex
the multiples of such manufactured rows genuinely enlarge the space. The
defining fixpoint is over the rows the elimination actually produces, so
those manufactured combinations must not be rescanned; the concluding
back-substitution is presentation only.

For degree-compatible orders every support monomial of an echelon row is
bounded by its pivot, so row degree equals pivot degree and any member f
of the rowspace decomposes over rows of degree <= deg(f). Two
consequences, both used here: the fixpoint is the same whether or not the
rescan sees back-substituted rows, and single-variable multipliers
suffice (induction on the multiplier degree). Orders that are not
degree-compatible (lex) keep the literal all-monomial schedule, where the
degree bound genuinely fails.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from . import linalg
from .errors import CapacityError, UsageError
from .polyring import (
    Polynomial,
    TermOrder,
    count_monomials_upto,
    format_mono,
    mono_mul,
    monomials_of_degree,
    monomials_upto,
)

DEFAULT_MAX_COLUMNS = 20_000
DEFAULT_MAX_CELLS = 80_000_000
CHUNK_ROWS = 4096


def sorted_columns(n, d, order):
    """Monomials of degree <= d, largest first under order."""
    return sorted(monomials_upto(n, d), key=order.key, reverse=True)


def poly_to_vec(f, col_index, ncols):
    v = np.zeros(ncols, dtype=np.int64)
    for m, c in f.coeffs.items():
        idx = col_index.get(m)
        if idx is None:
            raise UsageError(f"monomial of degree {sum(m)} outside the degree-bounded column set")
        v[idx] = c
    return v


def vec_to_poly(vec, columns, n, p):
    coeffs = {}
    for idx in np.nonzero(vec)[0]:
        coeffs[columns[idx]] = int(vec[idx])
    return Polynomial(coeffs, n, p, _normalized=True)


class MacaulayMatrix:
    """The raw degree-d Macaulay matrix before any reduction."""

    __slots__ = ("system", "order", "d", "columns", "col_index", "rows", "matrix")

    def __init__(self, system, order, d, columns, col_index, rows, matrix):
        self.system = system
        self.order = order
        self.d = d
        self.columns = columns
        self.col_index = col_index
        self.rows = rows  # list of (generator index, multiplier monomial)
        self.matrix = matrix

    def row_poly(self, i):
        gi, u = self.rows[i]
        return self.system.gens[gi].mul_mono(u)


def _check_capacity(n, d, max_columns):
    ncols = count_monomials_upto(n, d)
    if ncols > max_columns:
        raise CapacityError(
            f"degree {d} needs {ncols} columns in {n} variables, above the cap {max_columns}"
        )
    return ncols


def build_macaulay(system, d, order, max_columns=DEFAULT_MAX_COLUMNS):
    """Assemble the degree-d Macaulay matrix of the system under order."""
    if d < 0:
        raise UsageError(f"degree bound must be >= 0, got {d}")
    n = system.n
    _check_capacity(n, d, max_columns)
    columns = sorted_columns(n, d, order)
    col_index = {m: i for i, m in enumerate(columns)}
    rows = []
    for gi, f in enumerate(system.gens):
        room = d - f.degree
        if room < 0:
            continue
        for u in monomials_upto(n, room):
            rows.append((gi, u))
    matrix = np.zeros((len(rows), len(columns)), dtype=np.int64)
    for r, (gi, u) in enumerate(rows):
        f = system.gens[gi]
        for m, c in f.coeffs.items():
            matrix[r, col_index[mono_mul(m, u)]] = c
    return MacaulayMatrix(system, order, d, columns, col_index, rows, matrix)


class EchelonBasis:
    """Reduced row echelon basis of a degree-bounded space of polynomials."""

    __slots__ = (
        "order",
        "d",
        "columns",
        "col_index",
        "matrix",
        "pivots",
        "names",
        "n",
        "p",
        "initial_rank",
        "passes",
    )

    def __init__(self, order, d, columns, col_index, matrix, pivots, names, n, p,
                 initial_rank=0, passes=0):
        self.order = order
        self.d = d
        self.columns = columns
        self.col_index = col_index
        self.matrix = matrix
        self.pivots = pivots
        self.names = names
        self.n = n
        self.p = p
        self.initial_rank = initial_rank
        self.passes = passes

    @property
    def dim(self):
        return len(self.pivots)

    def row_poly(self, i):
        return vec_to_poly(self.matrix[i], self.columns, self.n, self.p)

    def rows(self):
        return [self.row_poly(i) for i in range(self.dim)]

    def row_degrees(self):
        coldeg = np.fromiter((sum(m) for m in self.columns), dtype=np.int64, count=len(self.columns))
        out = []
        for i in range(self.dim):
            nz = np.nonzero(self.matrix[i])[0]
            out.append(int(coldeg[nz].max()) if nz.size else -1)
        return out

    def pivot_monomials(self):
        return [self.columns[c] for c in self.pivots]

    def contains(self, f):
        """Membership of f in the rowspace, by full reduction."""
        if f.n != self.n or f.p != self.p:
            raise UsageError("polynomial ring does not match the basis")
        if f.is_zero():
            return True
        if f.degree > self.d:
            raise UsageError(
                f"membership query of degree {f.degree} against a degree-{self.d} basis"
            )
        v = poly_to_vec(f, self.col_index, len(self.columns))
        r = linalg.reduce_vector(self.matrix, self.pivots, v, self.p)
        return not r.any()

    def dim_upto_degree(self, e):
        """Dimension of (rowspace intersect R_{<=e}); needs a degree-compatible order."""
        if not self.order.degree_compatible:
            raise UsageError("degree truncation of a rowspace needs a degree-compatible order")
        return sum(1 for c in self.pivots if sum(self.columns[c]) <= e)

    def dump_csv(self):
        """CSV dump: row index, monomial, coefficient triples, then the pivot list."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "monomial", "coefficient"])
        for i in range(self.dim):
            for idx in np.nonzero(self.matrix[i])[0]:
                m = self.columns[idx]
                w.writerow([i, format_mono(m, self.names) or "1", int(self.matrix[i, idx])])
        w.writerow([])
        w.writerow(["pivot_row", "pivot_monomial"])
        for i, c in enumerate(self.pivots):
            w.writerow([i, format_mono(self.columns[c], self.names) or "1"])
        return buf.getvalue()

    def __repr__(self):
        return (
            f"EchelonBasis(d={self.d}, dim={self.dim}, order={self.order.token(self.names)})"
        )


def _absorb(basis, chunk, p, max_cells):
    """Echelonize the stack [basis; chunk]; returns the new basis and pivots.

    Forward elimination only: rows already in the basis keep their content,
    they are at most reordered as new pivots interleave.
    """
    if basis is None:
        stacked = chunk
    else:
        stacked = np.vstack([basis, chunk])
    if stacked.size > max_cells:
        raise CapacityError(
            f"working matrix of {stacked.shape[0]}x{stacked.shape[1]} cells exceeds the cap {max_cells}"
        )
    reduced, pivots = linalg.ref_mod(stacked, p, copy=False)
    return reduced, pivots


def lazard_closure(system, d, order, max_columns=DEFAULT_MAX_COLUMNS, max_cells=DEFAULT_MAX_CELLS):
    """Close the degree-d Macaulay rowspace under admissible re-multiplication.

    Returns the EchelonBasis of the fixpoint: after every pass, any row of
    degree e < d times any monomial of degree <= d - e lies back in the
    rowspace.
    """
    if d < 0:
        raise UsageError(f"degree bound must be >= 0, got {d}")
    n, p = system.n, system.p
    _check_capacity(n, d, max_columns)
    columns = sorted_columns(n, d, order)
    ncols = len(columns)
    col_index = {m: i for i, m in enumerate(columns)}
    coldeg = np.fromiter((sum(m) for m in columns), dtype=np.int64, count=ncols)

    # variable shift tables: column -> column of the monomial times x_i
    shift = np.full((n, ncols), -1, dtype=np.int64)
    for idx, m in enumerate(columns):
        for i in range(n):
            if sum(m) < d:
                lifted = list(m)
                lifted[i] += 1
                shift[i, idx] = col_index[tuple(lifted)]

    basis, pivots = None, []

    def feed(sparse_rows):
        nonlocal basis, pivots
        chunk = np.zeros((len(sparse_rows), ncols), dtype=np.int64)
        for r, entries in enumerate(sparse_rows):
            for idx, c in entries:
                chunk[r, idx] = c
        basis, pivots = _absorb(basis, chunk, p, max_cells)

    # initial rows: every admissible monomial multiple of every generator
    pending = []
    for f in system.gens:
        room = d - f.degree
        if room < 0:
            continue
        fv = [(col_index[m], c) for m, c in f.coeffs.items()]
        for u in monomials_upto(n, room):
            if sum(u) == 0:
                pending.append(fv)
            else:
                pending.append([(col_index[mono_mul(columns[idx], u)], c) for idx, c in fv])
        while len(pending) >= CHUNK_ROWS:
            feed(pending[:CHUNK_ROWS])
            pending = pending[CHUNK_ROWS:]
    if pending:
        feed(pending)
        pending = []
    if basis is None:
        basis = np.zeros((0, ncols), dtype=np.int64)

    initial_rank = len(pivots)
    single_vars = order.degree_compatible
    expanded = set()  # pivot columns whose (immutable) rows were multiplied out
    passes = 0

    while True:
        # snapshot the rows to expand before feeding anything: feeds reorder
        # the basis, so row entries must be captured now
        todo = []
        for r, pc in enumerate(pivots):
            if pc in expanded:
                continue
            expanded.add(pc)
            row = basis[r]
            nz = np.nonzero(row)[0]
            rdeg = int(coldeg[nz].max())
            if rdeg >= d:
                continue
            entries = [(int(idx), int(row[idx])) for idx in nz]
            todo.append((rdeg, entries))
        if not todo:
            break
        passes += 1
        batch = []
        for rdeg, entries in todo:
            if single_vars:
                for i in range(n):
                    batch.append([(int(shift[i, idx]), c) for idx, c in entries])
            else:
                for u in monomials_upto(n, d - rdeg):
                    if sum(u) == 0:
                        continue
                    batch.append(
                        [(col_index[mono_mul(columns[idx], u)], c) for idx, c in entries]
                    )
            while len(batch) >= CHUNK_ROWS:
                feed(batch[:CHUNK_ROWS])
                batch = batch[CHUNK_ROWS:]
        if batch:
            feed(batch)

    # canonical presentation: back-substitute the fixpoint basis to RREF
    basis, pivots = linalg.rref_mod(basis, p, copy=False)

    names = system.names
    return EchelonBasis(
        order, d, columns, col_index, basis, pivots, names, n, p,
        initial_rank=initial_rank, passes=passes,
    )


def v_space(system, d, max_columns=DEFAULT_MAX_COLUMNS, max_cells=DEFAULT_MAX_CELLS):
    """The degree-d closure under the default degrevlex order.

    For degree-compatible orders the closed rowspace is order-independent,
    so this canonical choice serves the order-free invariants.
    """
    order = TermOrder.degrevlex(system.n)
    return lazard_closure(system, d, order, max_columns=max_columns, max_cells=max_cells)


def rowspace_contains(basis, f):
    """Convenience wrapper for EchelonBasis.contains."""
    return basis.contains(f)
