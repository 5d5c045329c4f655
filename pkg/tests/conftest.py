"""Shared builders and session fixtures for the test suite."""

from types import SimpleNamespace

import pytest

from solvedeg import corpus, invariants
from solvedeg.ffield import PrimeField
from solvedeg.polyring import PolySystem, parse_poly


def sys_of(p, names, *exprs):
    """Build a system from poly strings over F_p with space-separated names."""
    names = names.split()
    return PolySystem([parse_poly(e, names, p) for e in exprs], PrimeField(p), names)


def corpus_entry(name):
    for e in corpus.ENTRIES:
        if e.name == name:
            return e
    raise KeyError(name)


def named_system(name, q=5):
    """Corpus system with its file order, frozen expectations, and a cache."""
    entry = corpus_entry(name)
    system, sf = corpus.corpus_system(entry, q)
    return SimpleNamespace(
        name=name,
        q=q,
        system=system,
        order=sf.order or system.default_order(),
        expect=entry.expect(q),
        cache=invariants.ClosureCache(system),
    )


@pytest.fixture(scope="session")
def intervals():
    return named_system("equality-intervals")


@pytest.fixture(scope="session")
def ex1_q5():
    return named_system("all-equal-small", 5)


@pytest.fixture(scope="session")
def ex2_q5():
    return named_system("sd-above-lfd", 5)


@pytest.fixture(scope="session")
def ex3_q3():
    return named_system("disputed-dreg", 3)


@pytest.fixture(scope="session")
def ex4_q3():
    return named_system("late-falls", 3)


@pytest.fixture(scope="session")
def quadrics():
    return named_system("no-falls-quadrics")


@pytest.fixture(scope="session")
def lex_rowspace_gap():
    return named_system("lex-rowspace-gap")


@pytest.fixture(scope="session")
def lex_sd_gap():
    return named_system("lex-sd-gap")
