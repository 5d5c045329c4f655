"""Buchberger's algorithm and reduced Groebner bases.

Pair selection follows the normal strategy (smallest lcm degree first),
with Buchberger's coprimality criterion to discard pairs whose leading
monomials share no variable. Output bases are reduced: minimal, monic,
and with no monomial of any element divisible by another leading term.
"""

from __future__ import annotations

from .errors import CapacityError, UsageError
from .polyring import (
    Polynomial,
    PolySystem,
    count_monomials_upto,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
    monomials_upto,
)

DEFAULT_MAX_DEGREE = 60
DEFAULT_MAX_PAIRS = 10**6


class GroebnerBasis:
    """A reduced Groebner basis with its order; elements sorted by leading term."""

    __slots__ = ("elements", "order", "n", "p")

    def __init__(self, elements, order):
        elements = sorted(elements, key=lambda f: order.key(f.leading_monomial(order)))
        self.elements = tuple(elements)
        self.order = order
        self.n = elements[0].n if elements else order.n
        self.p = elements[0].p if elements else 0

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.elements]

    def max_degree(self):
        return max(g.degree for g in self.elements)

    def contains(self, f):
        """Ideal membership: the normal form of f vanishes."""
        return normal_form(f, self.elements, self.order).is_zero()

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.elements)


def spoly(f, g, order):
    """The S-polynomial of f and g."""
    lf = f.leading_monomial(order)
    lg = g.leading_monomial(order)
    l = mono_lcm(lf, lg)
    p = f.p
    cf = pow(f.coeffs[lf], -1, p)
    cg = pow(g.coeffs[lg], -1, p)
    return f.mul_mono(mono_div(l, lf), cf) - g.mul_mono(mono_div(l, lg), cg)


def normal_form(f, basis, order):
    """Remainder of f under multivariate division by basis.

    The reducer is the first basis element whose leading term divides the
    current leading monomial, which makes the result deterministic; for a
    Groebner basis it is independent of that choice anyway.
    """
    if isinstance(basis, GroebnerBasis):
        basis = basis.elements
    basis = [g for g in basis if not g.is_zero()]
    lts = [(g.leading_monomial(order), g) for g in basis]
    p = f.p
    remainder = {}
    work = dict(f.coeffs)
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        for lt, g in lts:
            if mono_divides(lt, m):
                u = mono_div(m, lt)
                scale = (c * pow(g.coeffs[lt], -1, p)) % p
                for gm, gc in g.coeffs.items():
                    if gm == lt:
                        continue
                    key = mono_mul(gm, u)
                    v = (work.get(key, 0) - scale * gc) % p
                    if v:
                        work[key] = v
                    elif key in work:
                        del work[key]
                break
        else:
            remainder[m] = c
    return Polynomial(remainder, f.n, p, _normalized=True)


def _gens_of(system_or_polys):
    if isinstance(system_or_polys, PolySystem):
        return list(system_or_polys.gens)
    return [f for f in system_or_polys]


def buchberger(system, order, max_degree=DEFAULT_MAX_DEGREE, max_pairs=DEFAULT_MAX_PAIRS):
    """Reduced Groebner basis of (system) under order.

    Raises CapacityError when an intermediate element would exceed
    max_degree or more than max_pairs S-pairs get processed.
    """
    gens = _gens_of(system)
    if not gens:
        raise UsageError("cannot take a Groebner basis of an empty system")
    basis = []
    for f in gens:
        if f.is_zero():
            continue
        if f.degree > max_degree:
            raise CapacityError(
                f"generator degree {f.degree} exceeds the degree cap {max_degree}"
            )
        basis.append(f.monic(order))
    if not basis:
        raise UsageError("all generators are zero")

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    processed = 0

    def pair_key(ij):
        i, j = ij
        l = mono_lcm(
            basis[i].leading_monomial(order), basis[j].leading_monomial(order)
        )
        return (mono_deg(l),) + tuple(order.key(l)) + (i, j)

    while pairs:
        processed += 1
        if processed > max_pairs:
            raise CapacityError(
                f"pair cap {max_pairs} exceeded (basis size {len(basis)}, "
                f"max degree {max(g.degree for g in basis)})"
            )
        ij = min(pairs, key=pair_key)
        pairs.discard(ij)
        i, j = ij
        li = basis[i].leading_monomial(order)
        lj = basis[j].leading_monomial(order)
        if mono_mul(li, lj) == mono_lcm(li, lj):
            # coprime leading terms, the S-polynomial reduces to zero
            continue
        r = normal_form(spoly(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        if r.degree > max_degree:
            raise CapacityError(
                f"S-polynomial remainder of degree {r.degree} exceeds the degree cap "
                f"{max_degree} (basis size {len(basis)})"
            )
        r = r.monic(order)
        k = len(basis)
        basis.append(r)
        pairs.update((i2, k) for i2 in range(k))

    return GroebnerBasis(_interreduce(_minimalize(basis, order), order), order)


def _minimalize(basis, order):
    """Drop elements whose leading term another leading term divides."""
    lts = [g.leading_monomial(order) for g in basis]
    keep = []
    for i, g in enumerate(basis):
        lt = lts[i]
        redundant = False
        for j, other in enumerate(lts):
            if j == i:
                continue
            if mono_divides(other, lt) and (other != lt or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    return keep


def _interreduce(basis, order):
    """Replace each element by its normal form against the others."""
    out = list(basis)
    changed = True
    while changed:
        changed = False
        for i in range(len(out)):
            others = out[:i] + out[i + 1 :]
            r = normal_form(out[i], others, order)
            if r.is_zero():
                raise AssertionError("minimal basis element reduced to zero")
            r = r.monic(order)
            if r != out[i]:
                out[i] = r
                changed = True
    return out


def max_gb_degree(system, order, max_degree=DEFAULT_MAX_DEGREE, max_pairs=DEFAULT_MAX_PAIRS, gb=None):
    """Largest total degree in the reduced Groebner basis under order."""
    if gb is None:
        gb = buchberger(system, order, max_degree=max_degree, max_pairs=max_pairs)
    return gb.max_degree()


def leading_term_ideal(gb):
    """Minimal monomial generators of the leading term ideal."""
    lts = gb.leading_monomials()
    out = []
    for i, m in enumerate(lts):
        if any(mono_divides(other, m) and (other != m or j < i) for j, other in enumerate(lts)):
            continue
        out.append(m)
    return out


def standard_monomials_of_degree(lt_gens, n, d):
    """Monomials of degree exactly d outside the monomial ideal lt_gens."""
    return [
        m
        for m in monomials_of_degree(n, d)
        if not any(mono_divides(g, m) for g in lt_gens)
    ]


def ideal_trunc_dim(system, d, order, gb=None, max_degree=DEFAULT_MAX_DEGREE, max_pairs=DEFAULT_MAX_PAIRS):
    """dim_k of (system)_{<=d}, the ideal members of degree at most d.

    Counts the degree-<=d monomials inside the leading term ideal, which
    equals the truncation dimension for degree-compatible orders only.
    """
    if not order.degree_compatible:
        raise UsageError("ideal_trunc_dim needs a degree-compatible order")
    if d < 0:
        raise UsageError(f"degree bound must be >= 0, got {d}")
    if gb is None:
        gb = buchberger(system, order, max_degree=max_degree, max_pairs=max_pairs)
    n = gb.n
    count_monomials_upto(n, d)
    lt_gens = leading_term_ideal(gb)
    total = 0
    for m in monomials_upto(n, d):
        if any(mono_divides(g, m) for g in lt_gens):
            total += 1
    return total
