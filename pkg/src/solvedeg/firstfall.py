"""First fall degree over B = F_q[x_1,...,x_n]/(x_1^q,...,x_n^q).

Syzygies of the top components f_1^top,...,f_r^top live in B^r: vectors
(b_1,...,b_r) with sum b_i * f_i^top = 0 in B, graded by
deg(b_i) + deg(f_i) = d. Syz_d is the kernel of a finite linear map and
Triv_d is spanned by the B-monomial multiples of the trivial syzygies:
the Koszul relations f_i e_j - f_j e_i, the power relations
f_i^{q-1} e_i, and the unit relations e_i for generators whose top
component vanishes in B. The last family covers the field equations
(the top of x_i^q - x_i is x_i^q = 0 in B); those unit syzygies are
present for any such generator regardless of the structure of the
system, which is the defining property of a trivial syzygy, and leaving
them out would make every field-equation system report a spurious fall
at degree q. The first fall degree is the least d with
dim Syz_d > dim Triv_d.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import CapacityError, UsageError
from .polyring import Polynomial, monomials_of_degree

DEFAULT_MAX_CELLS = 4_000_000


def b_reduce(f, q):
    """Image of f in B: monomials with any exponent >= q vanish."""
    coeffs = {m: c for m, c in f.coeffs.items() if max(m, default=0) < q}
    return Polynomial(coeffs, f.n, f.p, _normalized=True)


def b_monomials(n, e, q):
    """Degree-e monomial basis of B, every exponent below q."""
    if e < 0:
        return []
    return [m for m in monomials_of_degree(n, e) if max(m, default=0) < q]


def _b_mul(f, g, q):
    return b_reduce(f * g, q)


@dataclass
class SyzygySpace:
    """Row-reduced basis of a space of degree-d syzygies in B^r.

    Columns are the concatenated B-monomial bases of the component
    degrees d - deg(f_i); vectors with a component of negative degree
    have an empty block there.
    """

    n: int
    p: int
    q: int
    d: int
    gen_degrees: list  # R-degrees of the f_i^top
    blocks: list  # per generator: list of B-monomials of degree d - deg f_i
    offsets: list  # starting column of each block
    matrix: np.ndarray  # RREF rows
    pivots: list

    @property
    def dim(self):
        return len(self.pivots)

    def vector_of(self, components):
        """Flatten (b_1,...,b_r) into the column layout of this space."""
        if len(components) != len(self.blocks):
            raise UsageError(
                f"expected {len(self.blocks)} components, got {len(components)}"
            )
        total = self.offsets[-1]
        v = np.zeros(total, dtype=np.int64)
        for i, b in enumerate(components):
            b = b_reduce(b, self.q)
            if b.is_zero():
                continue
            want = self.d - self.gen_degrees[i]
            if b.degree != want or not b.is_homogeneous():
                raise UsageError(
                    f"component {i} must be homogeneous of degree {want}"
                )
            index = {m: k for k, m in enumerate(self.blocks[i])}
            for m, c in b.coeffs.items():
                v[self.offsets[i] + index[m]] = c
        return v

    def contains(self, components):
        """Membership of the syzygy (b_1,...,b_r) in this space."""
        v = self.vector_of(components)
        r = linalg.reduce_vector(self.matrix, self.pivots, v, self.p)
        return not r.any()

    def vectors(self):
        """Basis rows as component lists of B-polynomials."""
        out = []
        for row in self.matrix:
            comps = []
            for i, block in enumerate(self.blocks):
                off = self.offsets[i]
                coeffs = {
                    m: int(row[off + k]) for k, m in enumerate(block) if row[off + k]
                }
                comps.append(Polynomial(coeffs, self.n, self.p, _normalized=True))
            out.append(comps)
        return out


def _check_top_system(Ftop, q):
    if q != Ftop.p:
        raise UsageError(
            f"the syzygy ring uses q = p; got q = {q} over F_{Ftop.p}"
        )
    for f in Ftop.gens:
        if not f.is_homogeneous():
            raise UsageError("syzygy spaces need homogeneous generators")


def _layout(Ftop, d, q):
    n = Ftop.n
    degrees = [f.degree for f in Ftop.gens]
    blocks = [b_monomials(n, d - di, q) for di in degrees]
    offsets = [0]
    for b in blocks:
        offsets.append(offsets[-1] + len(b))
    return degrees, blocks, offsets


def _guard_cells(rows, cols, what, d, max_cells):
    if rows * cols > max_cells:
        raise CapacityError(
            f"{what} matrix at degree {d} needs {rows} x {cols} entries"
            f" (cap {max_cells} cells)"
        )


def _space(Ftop, d, q, rows):
    n, p = Ftop.n, Ftop.p
    degrees, blocks, offsets = _layout(Ftop, d, q)
    if rows:
        mat = np.vstack(rows)
    else:
        mat = np.zeros((0, offsets[-1]), dtype=np.int64)
    reduced, pivots = linalg.rref_mod(mat, p, copy=False)
    return SyzygySpace(n, p, q, d, degrees, blocks, offsets, reduced, pivots)


def syz_space(Ftop, d, q, max_cells=DEFAULT_MAX_CELLS):
    """Basis of the homogeneous degree-d syzygies of Ftop in B^r."""
    _check_top_system(Ftop, q)
    n, p = Ftop.n, Ftop.p
    degrees, blocks, offsets = _layout(Ftop, d, q)
    tops = [b_reduce(f, q) for f in Ftop.gens]
    target = b_monomials(n, d, q)
    t_index = {m: k for k, m in enumerate(target)}
    _guard_cells(len(target), offsets[-1], "syzygy", d, max_cells)
    a = np.zeros((len(target), offsets[-1]), dtype=np.int64)
    for i, f in enumerate(tops):
        for k, m in enumerate(blocks[i]):
            prod = b_reduce(f.mul_mono(m), q)
            for mm, c in prod.coeffs.items():
                a[t_index[mm], offsets[i] + k] = c
    kernel = linalg.nullspace_mod(a, p)
    return _space(Ftop, d, q, list(kernel))


def triv_space(Ftop, d, q, max_cells=DEFAULT_MAX_CELLS):
    """Span of the degree-d multiples of the trivial syzygies of Ftop."""
    _check_top_system(Ftop, q)
    n, p = Ftop.n, Ftop.p
    degrees, blocks, offsets = _layout(Ftop, d, q)
    tops = [b_reduce(f, q) for f in Ftop.gens]
    r = len(tops)
    total = offsets[-1]

    def emit(rows, parts, gdeg):
        """All degree-d monomial multiples of a syzygy with components parts."""
        room = d - gdeg
        if room < 0:
            return
        multipliers = b_monomials(n, room, q)
        _guard_cells(len(rows) + len(multipliers), total, "trivial syzygy", d, max_cells)
        for m in multipliers:
            v = np.zeros(total, dtype=np.int64)
            zero = True
            for i, part in parts:
                shifted = b_reduce(part.mul_mono(m), q)
                if shifted.is_zero():
                    continue
                zero = False
                index = {mm: k for k, mm in enumerate(blocks[i])}
                for mm, c in shifted.coeffs.items():
                    v[offsets[i] + index[mm]] = c
            if not zero:
                rows.append(v)

    rows = []
    one = Polynomial({tuple([0] * n): 1}, n, p, _normalized=True)
    for i in range(r):
        if tops[i].is_zero():
            # unit syzygy: the generator itself is 0 in B
            emit(rows, [(i, one)], degrees[i])
    for i in range(r):
        for j in range(i + 1, r):
            # Koszul: f_i e_j - f_j e_i
            emit(rows, [(j, tops[i]), (i, -tops[j])], degrees[i] + degrees[j])
    for i in range(r):
        if q * degrees[i] > d:
            # the power syzygy lives in degree q * deg f_i, above d
            continue
        power = one
        for _ in range(q - 1):
            power = _b_mul(power, tops[i], q)
            if power.is_zero():
                break
        if not power.is_zero():
            emit(rows, [(i, power)], q * degrees[i])
    return _space(Ftop, d, q, rows)


def search_bound(F, q=None, dmax=None):
    """Largest degree the first-fall scan will examine.

    Defaults to q + total top degree, further capped by the top degree
    of B itself, above which every syzygy space is zero.
    """
    if q is None:
        q = F.p
    degrees = [f.degree for f in F.gens]
    if dmax is None:
        dmax = q + sum(degrees)
    return min(dmax, max(degrees) + F.n * (q - 1))


def first_fall_degree(F, q=None, dmax=None, max_cells=DEFAULT_MAX_CELLS):
    """Least d with dim Syz_d > dim Triv_d for F^top over B, or None."""
    if q is None:
        q = F.p
    if q != F.p:
        raise UsageError(f"the syzygy ring uses q = p; got q = {q} over F_{F.p}")
    Ftop = F.top_system()
    hard = search_bound(F, q, dmax)
    for d in range(min(f.degree for f in Ftop.gens), hard + 1):
        s = syz_space(Ftop, d, q, max_cells=max_cells)
        t = triv_space(Ftop, d, q, max_cells=max_cells)
        if s.dim > t.dim:
            return d
    return None
