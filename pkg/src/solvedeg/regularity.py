"""Hilbert series, index of regularity, and Castelnuovo-Mumford regularity.

The Hilbert side works from the leading term ideal of a homogeneous
Groebner basis: the numerator N(t) of HS_{R/I}(t) = N(t)/(1-t)^n comes
from the classical splitting recursion on a monomial ideal,
N(I) = N(I + (x)) + t*N(I : x). Writing N(t) = Q(t)*(1-t)^(n-D) with
Q(1) != 0 gives the Krull dimension D of R/I and the index of regularity
ireg = max(0, deg Q - D + 1), the degree from which the Hilbert function
agrees with the Hilbert polynomial. The ideal and its quotient share the
same index because dim R_d is one binomial polynomial on all of d >= 0,
so the HF/HP gaps of I and R/I coincide degree by degree.

Castelnuovo-Mumford regularity comes from graded Betti numbers, read off
the Koszul complex on the variables tensored with S/I:
beta_{i,j}(S/I) = dim H_i(K ⊗ S/I)_j. Each graded piece is a finite
strand C_{i,j} with basis (i-subset of variables, standard monomial of
degree j - i), and the homology dimension is dim C_{i,j} minus the ranks
of the two adjacent differentials. The strand scan covers every internal
degree up to the degree of the lcm of the minimal leading monomials:
passing to the leading-term ideal never shrinks a graded Betti number,
and the Taylor complex on those monomial generators vanishes above that
degree, so nothing can hide past it. A table whose scan hit the hard
degree cap before that bound is flagged uncertified rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import linalg
from .errors import CapacityError, UsageError
from .groebner import (
    buchberger,
    leading_term_ideal,
    normal_form,
    standard_monomials_of_degree,
)
from .polyring import Polynomial, TermOrder, mono_divides

DEFAULT_RANK_FLOPS = 2_000_000_000


def _minimal_monomials(monos):
    """Minimal generators of the monomial ideal spanned by monos."""
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_add(a, b, shift=0):
    out = list(a) + [0] * max(0, shift + len(b) - len(a))
    for i, c in enumerate(b):
        out[shift + i] += c
    return out


def hilbert_numerator(lt_gens, n):
    """Numerator N(t) of HS_{R/I}(t) = N(t)/(1-t)^n for a monomial ideal.

    Splitting recursion on a variable x occurring in a non-linear minimal
    generator: N(I) = N(I + (x)) + t*N(I : x). Base cases are the zero
    ideal, the unit ideal, and ideals generated by plain variables.
    """
    cache = {}

    def rec(gens):
        gens = tuple(_minimal_monomials(gens))
        hit = cache.get(gens)
        if hit is not None:
            return hit
        if not gens:
            out = [1]
        elif sum(gens[0]) == 0:
            out = [0]
        elif all(sum(g) == 1 for g in gens):
            k = len(gens)
            out = [(-1) ** i * math.comb(k, i) for i in range(k + 1)]
        else:
            counts = [0] * n
            for g in gens:
                if sum(g) > 1:
                    for i, e in enumerate(g):
                        if e:
                            counts[i] += 1
            x = max(range(n), key=lambda i: counts[i])
            var = tuple(1 if i == x else 0 for i in range(n))
            plus = [var] + [g for g in gens if g[x] == 0]
            colon = [
                tuple(e - 1 if i == x else e for i, e in enumerate(g)) if g[x] else g
                for g in gens
            ]
            out = _poly_add(rec(plus), rec(colon), shift=1)
        cache[gens] = out
        return out

    out = list(rec([tuple(g) for g in lt_gens]))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _binom_poly(m, k):
    """C(m, k) evaluated as the degree-k polynomial in m (m may be negative)."""
    num = 1
    for j in range(k):
        num *= m - j
    return num // math.factorial(k)


@dataclass
class HilbertData:
    """Hilbert series of a homogeneous quotient R/I over n variables."""

    n: int
    numerator: list  # N(t) with HS_{R/I} = N/(1-t)^n
    krull_dim: int  # D = dim R/I
    reduced_numerator: list  # Q(t) with HS_{R/I} = Q/(1-t)^D, Q(1) != 0
    ireg: int

    def hf_quotient(self, d):
        """dim (R/I)_d, from the series expansion of N/(1-t)^n."""
        if d < 0:
            return 0
        n = self.n
        return sum(
            c * math.comb(d - i + n - 1, n - 1)
            for i, c in enumerate(self.numerator)
            if i <= d
        )

    def hp_quotient(self, d):
        """The Hilbert polynomial of R/I evaluated at d."""
        D = self.krull_dim
        if D == 0:
            return 0
        return sum(
            c * _binom_poly(d - i + D - 1, D - 1)
            for i, c in enumerate(self.reduced_numerator)
        )

    def hf_ideal(self, d):
        if d < 0:
            return 0
        return math.comb(d + self.n - 1, self.n - 1) - self.hf_quotient(d)

    def hp_ideal(self, d):
        return _binom_poly(d + self.n - 1, self.n - 1) - self.hp_quotient(d)


def hilbert_function(gb, d):
    """dim_k I_d of a homogeneous ideal, from its leading term ideal.

    Counting is exact because I_d and LT(I)_d have the same dimension:
    degree-d standard monomials form a basis of (R/I)_d.
    """
    if not gb.is_homogeneous():
        raise UsageError("hilbert function needs a homogeneous ideal")
    if d < 0:
        raise UsageError(f"degree must be >= 0, got {d}")
    n = gb.n
    lt = leading_term_ideal(gb)
    std = standard_monomials_of_degree(lt, n, d)
    return math.comb(n - 1 + d, n - 1) - len(std)


def hilbert_series(gb):
    """HilbertData of R/I for the homogeneous ideal I with Groebner basis gb."""
    if not gb.is_homogeneous():
        raise UsageError("hilbert series needs a homogeneous ideal")
    n = gb.n
    lt = leading_term_ideal(gb) if len(gb) else []
    numerator = hilbert_numerator(lt, n)
    q = list(numerator)
    D = n
    if q == [0]:
        # unit ideal: R/I = 0, the zero Hilbert function is its own polynomial
        return HilbertData(n, numerator, 0, [0], 0)
    while sum(q) == 0:
        acc = 0
        out = []
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out or [0]
        D -= 1
    ireg = max(0, (len(q) - 1) - D + 1)
    return HilbertData(n, numerator, D, q, ireg)


def degree_of_regularity(F, max_degree=60, max_pairs=10**6):
    """Index of regularity of the ideal of top homogeneous components."""
    tops = F.top_system()
    order = TermOrder.degrevlex(F.n)
    gb = buchberger(tops, order, max_degree=max_degree, max_pairs=max_pairs)
    data = hilbert_series(gb)
    if data.krull_dim == 0 and len(gb):
        # zero-dimensional cross-check: the index is also the first degree
        # where the top ideal fills the whole degree slice, which we can
        # read off the standard monomials independently of the recursion
        lt = leading_term_ideal(gb)
        filled = len(standard_monomials_of_degree(lt, F.n, data.ireg)) == 0
        nonempty_before = data.ireg == 0 or (
            len(standard_monomials_of_degree(lt, F.n, data.ireg - 1)) > 0
        )
        if not (filled and nonempty_before):
            raise CapacityError(
                "hilbert numerator disagrees with standard monomial counting"
            )
    return data.ireg


def ireg_by_enumeration(F, margin=3, max_window=40, max_degree=60, max_pairs=10**6):
    """Index of regularity of (F^top) by brute-force comparison.

    Counts quotient dimensions degree by degree, interpolates the
    eventual polynomial exactly over the rationals through n + 1 deep
    degrees, verifies the fit on margin further degrees, and scans down
    for the least degree from which function and polynomial agree.
    Independent of the numerator recursion, so the two check each other.
    """
    tops = F.top_system()
    order = TermOrder.degrevlex(F.n)
    gb = buchberger(tops, order, max_degree=max_degree, max_pairs=max_pairs)
    n = F.n
    lt = leading_term_ideal(gb) if len(gb) else []
    mins = _minimal_monomials(tuple(lt))
    # the numerator degree, hence the index, is at most the total degree
    # of the minimal monomial generators
    window = sum(sum(m) for m in mins) + 1
    top = window + n + margin
    if top > max_window:
        raise CapacityError(
            f"enumeration needs degrees up to {top} (cap {max_window})"
        )
    values = [len(standard_monomials_of_degree(lt, n, d)) for d in range(top + 1)]
    xs = list(range(window, window + n + 1))

    def fit(x):
        total = Fraction(0)
        for i, xi in enumerate(xs):
            term = Fraction(values[xi])
            for j, xj in enumerate(xs):
                if i != j:
                    term *= Fraction(x - xj, xi - xj)
            total += term
        return total

    for e in range(window + n + 1, top + 1):
        if fit(e) != values[e]:
            raise CapacityError(
                "interpolated hilbert polynomial fails beyond the window"
            )
    d0 = window
    while d0 > 0 and fit(d0 - 1) == values[d0 - 1]:
        d0 -= 1
    return d0


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} of S/I, nonzero entries only."""

    n: int
    entries: dict  # (i, j) -> beta_{i,j}(S/I)
    jmax: int  # largest internal degree actually scanned
    certified: bool

    def beta(self, i, j):
        return self.entries.get((i, j), 0)

    @property
    def reg_quotient(self):
        return max((j - i for (i, j) in self.entries), default=0)

    def pretty(self):
        """Betti diagram with rows j - i and columns i."""
        imax = max((i for (i, _) in self.entries), default=0)
        smax = self.reg_quotient
        width = max(
            [len(str(b)) for b in self.entries.values()] + [len(str(imax)), 1]
        )
        lines = ["    " + " ".join(f"{i:>{width}}" for i in range(imax + 1))]
        for s in range(smax + 1):
            cells = []
            for i in range(imax + 1):
                b = self.beta(i, i + s)
                cells.append(f"{b if b else '.':>{width}}")
            lines.append(f"{s:>2}: " + " ".join(cells))
        return "\n".join(lines)

    def to_json(self):
        return {
            "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items())],
            "jmax": self.jmax,
            "certified": self.certified,
        }


def _strand_rank(n, p, i, j, std, mult, combos, max_rank_flops):
    """Rank of the Koszul differential C_{i,j} -> C_{i-1,j} over S/I.

    Basis of C_{i,j}: pairs (T, m) with T an i-subset of the variables and
    m a standard monomial of degree j - i; the differential sends e_T (x) m
    to sum over k in T of (-1)^pos * e_{T-k} (x) nf(x_k * m).
    """
    e = j - i
    if i < 1 or i > n or e < 0:
        return 0
    src_std = std(e)
    dst_std = std(e + 1)
    src_T = combos(i)
    dst_T = combos(i - 1)
    rows = len(dst_T) * len(dst_std)
    cols = len(src_T) * len(src_std)
    if rows == 0 or cols == 0:
        return 0
    flops = rows * cols * min(rows, cols)
    if flops > max_rank_flops:
        raise CapacityError(
            f"rank of a {rows}x{cols} Koszul strand at (i={i}, j={j}) "
            f"exceeds the budget of {max_rank_flops} operations"
        )
    dst_T_pos = {T: pos for pos, T in enumerate(dst_T)}
    dst_std_pos = {m: k for k, m in enumerate(dst_std)}
    a = np.zeros((rows, cols), dtype=np.int64)
    tbl = mult(e)
    for tpos, T in enumerate(src_T):
        for mpos in range(len(src_std)):
            col = tpos * len(src_std) + mpos
            for ell, k in enumerate(T):
                sign = -1 if ell % 2 else 1
                S = T[:ell] + T[ell + 1 :]
                base = dst_T_pos[S] * len(dst_std)
                for m2, c in tbl[k][mpos]:
                    a[base + dst_std_pos[m2], col] += sign * c
    return linalg.rank_mod(a % p, p)


def betti_numbers(F_h, jmax=None, max_rank_flops=DEFAULT_RANK_FLOPS,
                  max_degree=60, max_pairs=10**6):
    """Graded Betti numbers of S/(F_h) for a homogeneous system F_h.

    Scans internal degrees up through the lcm degree of the minimal
    leading monomials, past which every entry provably vanishes; jmax is
    a hard cap (default twice the total generator degree) and hitting it
    first yields an uncertified table.
    """
    if not all(f.is_homogeneous() for f in F_h.gens):
        raise UsageError("betti numbers need homogeneous generators")
    n, p = F_h.n, F_h.p
    maxgen = F_h.max_degree()
    hard = 2 * sum(f.degree for f in F_h.gens) if jmax is None else jmax
    if hard < maxgen:
        raise UsageError(
            f"betti degree cap {hard} is below the top generator degree {maxgen}"
        )
    order = TermOrder.degrevlex(n)
    gb = buchberger(F_h, order, max_degree=max_degree, max_pairs=max_pairs)
    if any(g.degree == 0 for g in gb):
        raise UsageError("betti numbers of the unit ideal are not defined")
    lt = leading_term_ideal(gb)

    std_cache = {}

    def std(e):
        if e not in std_cache:
            std_cache[e] = standard_monomials_of_degree(lt, n, e)
        return std_cache[e]

    nf_cache = {}
    mult_cache = {}

    def mult(e):
        """Per variable k: std(e) index -> [(std monomial of degree e+1, coeff)]."""
        if e in mult_cache:
            return mult_cache[e]
        tbl = []
        tgt = set(std(e + 1))
        for k in range(n):
            var = tuple(1 if t == k else 0 for t in range(n))
            col = []
            for m in std(e):
                prod = tuple(a + b for a, b in zip(m, var))
                if prod in tgt:
                    col.append([(prod, 1)])
                    continue
                hit = nf_cache.get(prod)
                if hit is None:
                    nf = normal_form(Polynomial({prod: 1}, n, p), gb, order)
                    hit = tuple(nf.coeffs.items())
                    nf_cache[prod] = hit
                col.append(list(hit))
            tbl.append(col)
        mult_cache[e] = tbl
        return tbl

    combo_cache = {}

    def combos(i):
        if i not in combo_cache:
            combo_cache[i] = list(combinations(range(n), i))
        return combo_cache[i]

    entries = {}
    # Every graded Betti number of the quotient is at most the matching one of
    # the leading-term degeneration, whose Taylor complex lives in internal
    # degrees up to deg lcm(minimal monomial generators).  Scanning through
    # that degree therefore provably sees every nonzero entry.
    support = sum(max(g[k] for g in lt) for k in range(n)) if lt else 0
    scanned = min(support, hard)
    for j in range(scanned + 1):
        ranks = {
            i: _strand_rank(n, p, i, j, std, mult, combos, max_rank_flops)
            for i in range(1, min(n, j) + 2)
        }
        for i in range(0, min(n, j) + 1):
            dim_c = len(combos(i)) * len(std(j - i))
            b = dim_c - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if b:
                entries[(i, j)] = b

    certified = hard >= support
    return BettiTable(n, entries, scanned, certified)


@dataclass
class CmRegularity:
    """reg of a homogenized ideal with its certification status and table."""

    value: int
    certified: bool
    betti: BettiTable


def cm_regularity(F, jmax=None, max_rank_flops=DEFAULT_RANK_FLOPS,
                  max_degree=60, max_pairs=10**6, homvar="x0"):
    """Castelnuovo-Mumford regularity of the ideal (F^h).

    Homogenizes unless the system already is; the ideal convention is
    reg(ideal) = reg(quotient) + 1, read off the Betti table of S/(F^h).
    """
    if all(f.is_homogeneous() for f in F.gens):
        F_h = F
    else:
        F_h = F.homogenized(homvar)
    bt = betti_numbers(F_h, jmax=jmax, max_rank_flops=max_rank_flops,
                       max_degree=max_degree, max_pairs=max_pairs)
    return CmRegularity(bt.reg_quotient + 1, bt.certified, bt)
