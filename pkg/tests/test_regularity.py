"""Hilbert data, Betti tables, and the two regularity invariants."""

import math
import random

import pytest

from conftest import named_system, sys_of
from oracles import homogeneous_slice_rank, monomial_slice_count
from solvedeg.errors import CapacityError, UsageError
from solvedeg.groebner import buchberger, leading_term_ideal
from solvedeg.polyring import Polynomial, TermOrder, format_poly
from solvedeg.regularity import (
    betti_numbers,
    cm_regularity,
    degree_of_regularity,
    hilbert_function,
    hilbert_numerator,
    hilbert_series,
    ireg_by_enumeration,
)


def _trim(coeffs):
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def rand_homogeneous(rng, n, p, deg, terms=3):
    coeffs = {}
    while not coeffs:
        for _ in range(terms):
            m = [0] * n
            for _ in range(deg):
                m[rng.randrange(n)] += 1
            c = rng.randrange(1, p)
            coeffs[tuple(m)] = c
    return Polynomial(coeffs, n, p)


def hom_system(rng, n, p, gens):
    names = " ".join(f"x{i + 1}" for i in range(n))
    exprs = [
        format_poly(rand_homogeneous(rng, n, p, rng.randrange(1, 4)), names.split())
        for _ in range(gens)
    ]
    return sys_of(p, names, *exprs)


def test_hilbert_numerator_knowns():
    assert _trim(hilbert_numerator([], 2)) == [1]
    assert _trim(hilbert_numerator([(3,)], 1)) == [1, 0, 0, -1]
    assert _trim(hilbert_numerator([(2, 0), (0, 3)], 2)) == [1, 0, -1, -1, 0, 1]
    assert _trim(hilbert_numerator([(0, 0)], 2)) == []
    assert _trim(hilbert_numerator([(1, 0), (0, 1)], 2)) == [1, -2, 1]


def test_hilbert_function_matches_both_oracles():
    rng = random.Random(31)
    systems = [
        named_system("no-falls-quadrics").system,
        named_system("all-equal-small", 5).system.top_system(),
        named_system("disputed-dreg", 3).system.top_system(),
        hom_system(rng, 3, 5, 2),
        hom_system(rng, 2, 3, 3),
    ]
    for F in systems:
        gb = buchberger(F, TermOrder.degrevlex(F.n))
        if any(g.degree == 0 for g in gb):
            continue
        lt = leading_term_ideal(gb)
        for d in range(9):
            got = hilbert_function(gb, d)
            assert got == monomial_slice_count(lt, F.n, d)
            assert got == homogeneous_slice_rank([g.coeffs for g in gb], F.n, F.p, d)


def test_hilbert_function_guards():
    F = sys_of(5, "x y", "x^2 + y")
    gb = buchberger(F, TermOrder.degrevlex(2))
    with pytest.raises(UsageError, match="homogeneous"):
        hilbert_function(gb, 2)
    hom = buchberger(sys_of(5, "x y", "x^2"), TermOrder.degrevlex(2))
    with pytest.raises(UsageError, match=">= 0"):
        hilbert_function(hom, -1)


def test_hilbert_series_quotient_dimensions():
    F = named_system("no-falls-quadrics").system
    gb = buchberger(F, TermOrder.degrevlex(2))
    data = hilbert_series(gb)
    assert data.krull_dim == 0
    assert data.ireg == 3
    lt = leading_term_ideal(gb)
    for d in range(8):
        total = math.comb(2 - 1 + d, 2 - 1)
        assert data.hf_quotient(d) == total - monomial_slice_count(lt, 2, d)
        assert data.hf_ideal(d) + data.hf_quotient(d) == total
    assert [data.hf_quotient(d) for d in range(4)] == [1, 2, 1, 0]
    assert all(data.hp_quotient(d) == 0 for d in range(3, 8))


def test_hilbert_series_positive_dimension():
    F = sys_of(5, "x y z", "x^2", "x*y")
    gb = buchberger(F, TermOrder.degrevlex(3))
    data = hilbert_series(gb)
    assert data.krull_dim == 2
    for d in range(data.ireg, data.ireg + 6):
        assert data.hf_quotient(d) == data.hp_quotient(d)
    if data.ireg > 0:
        assert data.hf_quotient(data.ireg - 1) != data.hp_quotient(data.ireg - 1)


def test_hilbert_series_unit_ideal():
    gb = buchberger(sys_of(5, "x", "x + 1", "x + 2"), TermOrder.degrevlex(1))
    # the basis is {1}, a homogeneous monomial ideal filling everything
    data = hilbert_series(gb)
    assert data.krull_dim == 0
    assert data.ireg == 0
    assert all(data.hf_quotient(d) == 0 for d in range(4))


@pytest.mark.parametrize(
    "name,q,expected",
    [
        ("all-equal-small", 3, 2),
        ("all-equal-small", 5, 4),
        ("sd-above-lfd", 5, 5),
        ("disputed-dreg", 3, 1),
        ("disputed-dreg", 5, 1),
        ("no-falls-quadrics", 5, 3),
    ],
)
def test_degree_of_regularity_matches_enumeration(name, q, expected):
    F = named_system(name, q).system
    assert degree_of_regularity(F) == expected
    assert ireg_by_enumeration(F) == expected


def test_degree_of_regularity_more_enumeration_agreement():
    cases = [
        sys_of(5, "x", "x + 1", "x + 2"),
        sys_of(5, "x y z", "x^2 + y*z", "y^3 - z^3", "z^2 - x*y"),
        sys_of(3, "x y", "x^2 - y", "y^2 - x"),
        named_system("equality-intervals").system,
    ]
    for F in cases:
        assert degree_of_regularity(F) == ireg_by_enumeration(F)


def test_enumeration_window_guard():
    F = sys_of(5, "x y", "x^20", "y^20")
    with pytest.raises(CapacityError):
        ireg_by_enumeration(F, max_window=30)


def test_betti_of_koszul_complete_intersection():
    F = sys_of(5, "x y", "x^2", "y^3")
    bt = betti_numbers(F)
    assert bt.certified
    assert bt.entries == {(0, 0): 1, (1, 2): 1, (1, 3): 1, (2, 5): 1}
    assert bt.reg_quotient == 3
    reg = cm_regularity(F)
    assert reg.value == 4 and reg.certified


def test_betti_scan_crosses_gaps_in_the_resolution():
    # Homogenizing (2*x1 - 1) plus the field equations of F_5 gives, up to
    # the absorbed x1^5 - x1*x0^4, a regular sequence of degrees (1, 5, 5),
    # so the minimal resolution is its Koszul complex: internal degrees
    # 0, 1, 5, 6, 10, 11 with nothing in 7..9.  The scan must not stop
    # inside that gap and undercount the regularity.
    F = sys_of(
        5, "x1 x2 x3", "2*x1 - 1", "x1^5 - x1", "x2^5 - x2", "x3^5 - x3"
    )
    reg = cm_regularity(F)
    assert reg.certified
    assert reg.betti.entries == {
        (0, 0): 1, (1, 1): 1, (1, 5): 2, (2, 6): 2, (2, 10): 1, (3, 11): 1,
    }
    assert reg.betti.reg_quotient == 8
    assert reg.value == 9
    assert degree_of_regularity(F) == 9
    assert degree_of_regularity(F) <= reg.value


def test_betti_of_two_general_quadrics():
    F = named_system("no-falls-quadrics").system
    bt = betti_numbers(F)
    assert bt.certified
    assert bt.entries == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
    assert cm_regularity(F).value == 3


def test_betti_alternating_sum_is_hilbert_numerator():
    rng = random.Random(37)
    cases = [
        named_system("no-falls-quadrics").system,
        sys_of(5, "x y", "x^2", "y^3"),
        named_system("disputed-dreg", 3).system.top_system(),
        hom_system(rng, 3, 5, 2),
        hom_system(rng, 2, 3, 2),
    ]
    for F in cases:
        gb = buchberger(F, TermOrder.degrevlex(F.n))
        if any(g.degree == 0 for g in gb):
            continue
        bt = betti_numbers(F)
        assert bt.certified
        k_poly = [0] * (max(j for _, j in bt.entries) + 1)
        for (i, j), b in bt.entries.items():
            k_poly[j] += b if i % 2 == 0 else -b
        numer = hilbert_numerator(leading_term_ideal(gb), F.n)
        assert _trim(k_poly) == _trim(numer)


def test_betti_row_zero_is_the_empty_quotient_generator():
    bt = betti_numbers(sys_of(5, "x y", "x^2", "y^3"))
    assert bt.beta(0, 0) == 1
    assert sum(b for (i, _), b in bt.entries.items() if i == 0) == 1


def test_betti_guards_and_budget():
    with pytest.raises(UsageError, match="homogeneous"):
        betti_numbers(sys_of(5, "x y", "x^2 + y"))
    with pytest.raises(UsageError, match="unit ideal"):
        betti_numbers(sys_of(5, "x y", "x^2", "1"))
    with pytest.raises(UsageError, match="below the top generator"):
        betti_numbers(sys_of(5, "x y", "x^3"), jmax=2)
    with pytest.raises(CapacityError, match="budget"):
        betti_numbers(sys_of(5, "x y z", "x^2 + y*z", "y^2", "z^3"), max_rank_flops=1)


def test_uncertified_when_scan_is_capped():
    F = named_system("no-falls-quadrics").system
    bt = betti_numbers(F, jmax=2)
    assert not bt.certified
    reg = cm_regularity(F, jmax=2)
    assert not reg.certified


def test_cm_regularity_homogenizes_and_respects_homvar():
    F = sys_of(5, "x y", "x^2 - x", "x*y - 1")
    reg = cm_regularity(F)
    assert reg.certified and reg.value >= 2
    clash = named_system("lex-sd-gap").system
    with pytest.raises(UsageError, match="collides"):
        cm_regularity(clash)
    ok = cm_regularity(clash, homvar="h", max_rank_flops=10**8)
    assert ok.value >= 1


def test_regularity_is_stable_under_variable_swap():
    a = cm_regularity(sys_of(5, "x y", "x^2 + y^2", "x*y"))
    b = cm_regularity(sys_of(5, "y x", "x^2 + y^2", "x*y"))
    assert a.value == b.value == 3


def test_betti_pretty_and_json_shape():
    bt = betti_numbers(sys_of(5, "x y", "x^2", "y^3"))
    text = bt.pretty()
    assert "0" in text and ":" in text
    js = bt.to_json()
    assert js["certified"] is True
    assert [0, 0, 1] in js["entries"]
