"""Acceptance gate: the frozen end-to-end behaviors, one criterion per test.

Every comparison is an exact integer equality. Each test prints one
ACCEPTANCE line so the gate can be read off a verbose run directly.
"""

import json
import random
import time
from collections import Counter
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import named_system
from oracles import monomial_slice_count, residual_rows, span_closure_dim
from solvedeg import corpus, invariants, regularity
from solvedeg.cli import main
from solvedeg.errors import CapacityError
from solvedeg.ffield import PrimeField
from solvedeg.firstfall import first_fall_degree
from solvedeg.groebner import (
    buchberger,
    ideal_trunc_dim,
    leading_term_ideal,
    normal_form,
)
from solvedeg.macaulay import lazard_closure, poly_to_vec, rowspace_contains, v_space
from solvedeg.polyring import Polynomial, PolySystem, TermOrder, parse_poly
from solvedeg.regularity import hilbert_function


@contextmanager
def criterion(capsys, num, label):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"ACCEPTANCE {num}: FAIL  {label}")
        raise
    with capsys.disabled():
        print(f"ACCEPTANCE {num}: PASS  {label}")


def test_criterion_01_intervals_table_via_cli(capsys, tmp_path):
    with criterion(capsys, 1, "equality table of the interval system over the CLI"):
        entry = next(e for e in corpus.ENTRIES if e.name == "equality-intervals")
        path = tmp_path / "intervals.txt"
        path.write_text(entry.text(None), encoding="utf-8")
        out_path = tmp_path / "table.json"
        t0 = time.monotonic()
        code = main(["invariants", str(path), "--compute", "table",
                     "--max-degree", "12", "--json", str(out_path)])
        elapsed = time.monotonic() - t0
        capsys.readouterr()
        assert code == 0
        table = json.loads(out_path.read_text())["table"]
        a_false = [r["d"] for r in table["rows"] if not r["a"]]
        b_true = [r["d"] for r in table["rows"] if r["b"]]
        assert a_false == [2, 10]
        assert b_true == [0, 3, 4, 11, 12]
        assert table["complete_from"] == 11
        assert elapsed < 30.0


def test_criterion_02_intervals_solving_degree(capsys, intervals):
    with criterion(capsys, 2, "solving degree identity on the interval system"):
        F, cache = intervals.system, intervals.cache
        order = TermOrder.degrevlex(F.n)
        maxgb = cache.basis(order).max_degree()
        lfd = invariants.last_fall_degree_via_gb(F, cache=cache)
        sd = invariants.solving_degree(F, order, cache=cache)
        assert maxgb == 5
        assert lfd == 11
        assert sd == 11
        assert sd == max(lfd, maxgb)


def test_criterion_03_first_worked_example(capsys, ex1_q5):
    with criterion(capsys, 3, "all five invariants of the first worked example"):
        F, cache = ex1_q5.system, ex1_q5.cache
        order = TermOrder.degrevlex(F.n)
        assert first_fall_degree(F) == 3
        assert invariants.solving_degree(F, order, cache=cache) == 3
        assert invariants.last_fall_degree_via_gb(F, cache=cache) == 3
        assert cache.basis(order).max_degree() == 2
        assert regularity.degree_of_regularity(F) == 4
        reg = regularity.cm_regularity(F)
        assert reg.value == 5 and reg.certified
        assert reg.betti.entries == {
            (0, 0): 1,
            (1, 2): 2, (1, 4): 1,
            (2, 4): 1, (2, 5): 1, (2, 6): 1,
            (3, 7): 1,
        }
        ideal_shifts = sorted(
            j for (i, j), b in reg.betti.entries.items() if i >= 1 for _ in range(b)
        )
        assert ideal_shifts == [2, 2, 4, 4, 5, 6, 7]
        first_syzygies = sorted(j for (i, j) in reg.betti.entries if i == 2)
        second_syzygies = sorted(j for (i, j) in reg.betti.entries if i == 3)
        assert first_syzygies == [4, 5, 6]
        assert second_syzygies == [7]


def test_criterion_04_second_worked_example(capsys, ex2_q5):
    with criterion(capsys, 4, "solving degree above the last fall degree"):
        F, cache = ex2_q5.system, ex2_q5.cache
        order = TermOrder.degrevlex(F.n)
        maxgb = cache.basis(order).max_degree()
        assert first_fall_degree(F) == 3
        assert invariants.last_fall_degree_via_gb(F, cache=cache) == 3
        assert maxgb == 4
        sd = invariants.solving_degree(F, order, cache=cache)
        assert sd == 4
        assert sd == max(3, maxgb)
        assert regularity.degree_of_regularity(F) == 5
        reg = regularity.cm_regularity(F)
        assert reg.value == 6 and reg.certified


def test_criterion_05_disputed_regularity_claim(capsys, ex3_q3):
    with criterion(capsys, 5, "no-fall system with the disputed regularity claim"):
        F, cache, order = ex3_q3.system, ex3_q3.cache, ex3_q3.order
        events = invariants.degree_falls(F, cache=cache)
        assert events and all(not ev.is_fall for ev in events)
        assert invariants.last_fall_degree_via_gb(F, cache=cache) == 0
        maxgb = cache.basis(order).max_degree()
        sd = invariants.solving_degree(F, order, cache=cache)
        assert sd == 2 and maxgb == 2
        assert first_fall_degree(F) == 3 == F.p
        reg = regularity.cm_regularity(F)
        assert reg.value == 3 and reg.certified
        literal = regularity.degree_of_regularity(F)
        oracle = regularity.ireg_by_enumeration(F)
        assert literal == oracle == 1
        assert literal <= reg.value
        entry = next(e for e in corpus.ENTRIES if e.name == "disputed-dreg")
        exp = entry.expect(3)
        assert exp["disputed"] == ("dreg",)
        assert exp["dreg_claimed"] == 3, "the recorded claim stays recorded"


def test_criterion_06_late_falls(capsys, ex4_q3):
    with criterion(capsys, 6, "falls arriving at 2q-1 from quadratic generators"):
        F, cache = ex4_q3.system, ex4_q3.cache
        order = TermOrder.degrevlex(F.n)
        q = F.p
        assert first_fall_degree(F) == 3
        lfd = invariants.last_fall_degree_via_gb(F, cache=cache)
        assert lfd == 5 == 2 * q - 1
        assert invariants.solving_degree(F, order, cache=cache) == 5
        assert cache.basis(order).max_degree() == 2


def test_criterion_07_lex_rowspace_gap(capsys, lex_rowspace_gap):
    with criterion(capsys, 7, "a shifted member the lex rowspace never closes over"):
        F = lex_rowspace_gap.system
        member = parse_poly("x^2*y - x^2", list(F.names), F.p)
        assert v_space(F, 3).contains(member)
        closure = lazard_closure(F, 3, TermOrder.lex(F.n))
        assert not rowspace_contains(closure, member)


def test_criterion_08_lex_solving_degree_gap(capsys, lex_sd_gap):
    with criterion(capsys, 8, "lex solving degree below max(last fall, basis degree)"):
        F, cache = lex_sd_gap.system, lex_sd_gap.cache
        lex = lex_sd_gap.order
        assert not lex.degree_compatible
        sd_lex = invariants.solving_degree(F, lex, cache=cache)
        lfd = invariants.last_fall_degree_via_gb(F, cache=cache)
        maxgb_lex = cache.basis(lex).max_degree()
        assert sd_lex == 3
        assert lfd == 4
        assert maxgb_lex == 3
        assert sd_lex < max(lfd, maxgb_lex) == 4


def _draw_poly(rng, n, p, deg):
    while True:
        coeffs = {}
        for _ in range(rng.randrange(2, 6)):
            m = [0] * n
            for _ in range(rng.randrange(deg + 1)):
                m[rng.randrange(n)] += 1
            coeffs[tuple(m)] = rng.randrange(1, p)
        f = Polynomial(coeffs, n, p)
        if f.degree >= 1:
            return f


def _draw_system(rng):
    n = rng.randrange(1, 4)
    p = rng.choice((3, 5))
    names = [f"x{i + 1}" for i in range(n)]
    gens = [_draw_poly(rng, n, p, rng.randrange(1, 4))
            for _ in range(rng.randrange(1, 4))]
    return PolySystem(gens, PrimeField(p), names)


def _redundant_tops(S):
    """True when some top component lies in the ideal of the other tops.

    The first-fall-within-one-of-d_reg bound is proved by reading the
    witnessing syzygy off a minimal presentation of the top ideal, so it
    is only asserted when the tops really are a minimal generating set;
    a redundant top (e.g. a field-equation top divisible by another top)
    contributes a presentation syzygy that can fall arbitrarily later.
    """
    tops = S.top_system().gens
    drl = TermOrder.degrevlex(S.n)
    for i in range(len(tops)):
        others = [g for j, g in enumerate(tops) if j != i]
        if not others:
            continue
        gb = buchberger(PolySystem(others, S.field, list(S.names)), drl)
        if normal_form(tops[i], gb, drl).is_zero():
            return True
    return False


def _rows_reduce_to_zero(src, dst):
    if src.dim == 0:
        return True
    vecs = [
        poly_to_vec(src.row_poly(i), dst.col_index, len(dst.columns))
        for i in range(src.dim)
    ]
    return not residual_rows(vecs, dst.matrix, dst.pivots, dst.p).any()


def test_criterion_09_property_suite(capsys):
    with criterion(capsys, 9, "property suite over 200 random systems"):
        rng = random.Random(20260816)
        stats = Counter()
        for k in range(200):
            F = _draw_system(rng)
            variants = [(F, False), (F.with_field_equations(), True)]
            for S, augmented in variants:
                drl = TermOrder.degrevlex(S.n)
                grlex = TermOrder.grlex(S.n)
                cache = invariants.ClosureCache(S)
                lfd = invariants.last_fall_degree_via_gb(S, cache=cache)
                sds = {}
                for order in (drl, grlex):
                    maxgb = cache.basis(order).max_degree()
                    sd = invariants.solving_degree(S, order, cache=cache)
                    assert sd == max(lfd, maxgb), "solving degree identity"
                    sds[order] = sd
                    stats["identity"] += 1
                for d in range(sds[drl] + 1):
                    assert cache.closure(drl, d).dim == span_closure_dim(S, d), \
                        "closure growth matches the naive span oracle"
                    stats["closure_oracle"] += 1
                dstar = max(sds.values())
                a = cache.closure(drl, dstar)
                b = lazard_closure(S, dstar, grlex)
                assert a.dim == b.dim
                assert _rows_reduce_to_zero(a, b) and _rows_reduce_to_zero(b, a), \
                    "degree-compatible closures contain each other"
                stats["mutual"] += 1
                if augmented:
                    dff = first_fall_degree(S)
                    dreg = regularity.degree_of_regularity(S)
                    if dff is not None:
                        if _redundant_tops(S):
                            stats["dff_redundant_skip"] += 1
                        else:
                            assert dff <= dreg + 1, "first fall within one of d_reg"
                            stats["dff_bound"] += 1
                    try:
                        reg = regularity.cm_regularity(S, max_rank_flops=2 * 10**8)
                    except CapacityError:
                        stats["reg_capacity_skip"] += 1
                        reg = None
                    if reg is not None and reg.certified:
                        assert sds[drl] <= reg.value, "solving degree within regularity"
                        assert dreg <= reg.value, "d_reg within regularity"
                        stats["reg_bounds"] += 1
                else:
                    try:
                        reg = regularity.cm_regularity(S, max_rank_flops=2 * 10**8)
                    except CapacityError:
                        stats["reg_capacity_skip"] += 1
                        reg = None
                    if reg is not None and reg.certified:
                        dreg = regularity.degree_of_regularity(S)
                        assert dreg <= reg.value, "d_reg within regularity"
                        stats["dreg_bound"] += 1
            if k < 40:
                H = F.top_system()
                hcache = invariants.ClosureCache(H)
                events = invariants.degree_falls(H, cache=hcache)
                assert all(not ev.is_fall for ev in events), \
                    "homogeneous systems never fall"
                window = hcache.basis(TermOrder.degrevlex(H.n)).max_degree() + 1
                table = invariants.degree_equality_table(H, window, cache=hcache)
                assert all(r.a and r.b for r in table.rows), \
                    "homogeneous equality table is all-checks"
                stats["homogeneous"] += 1
        assert stats["identity"] == 800
        assert stats["mutual"] == 400
        assert stats["closure_oracle"] > 800
        assert stats["dff_bound"] > 0
        assert stats["reg_bounds"] > 0
        assert stats["dreg_bound"] > 0
        assert stats["homogeneous"] == 40
        with capsys.disabled():
            print(f"  criterion 9 coverage: {dict(sorted(stats.items()))}")


def test_criterion_10_oracle_agreement(capsys):
    with criterion(capsys, 10, "hilbert and truncation oracles across the corpus"):
        drl_ideals = 0
        for entry in corpus.ENTRIES:
            q = 5 if entry.valid_at(5) else entry.qs[0]
            F, _ = corpus.corpus_system(entry, q)
            top = F.top_system()
            order = TermOrder.degrevlex(top.n)
            gb = buchberger(top, order)
            lt = leading_term_ideal(gb)
            for d in range(13):
                assert hilbert_function(gb, d) == monomial_slice_count(lt, top.n, d)
            cache = invariants.ClosureCache(F)
            lfd = invariants.last_fall_degree_via_gb(F, cache=cache)
            fgb = cache.basis(TermOrder.degrevlex(F.n))
            for d in (lfd, lfd + 1):
                closed = cache.closure(TermOrder.degrevlex(F.n), d)
                assert closed.dim == ideal_trunc_dim(
                    F, d, TermOrder.degrevlex(F.n), gb=fgb
                )
            drl_ideals += 1
        assert drl_ideals == len(corpus.ENTRIES)
