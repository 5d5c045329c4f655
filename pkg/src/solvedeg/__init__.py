"""Groebner-basis complexity invariants of polynomial systems over prime fields.

The library computes and cross-checks the solving degree, last fall
degree, first fall degree, degree of regularity, and Castelnuovo-Mumford
regularity of a polynomial system, together with the Macaulay-matrix
machinery (Lazard closures) that connects them.
"""

from .errors import CapacityError, DegreeCapExceeded, SolvedegError, UsageError
from .ffield import FieldElement, PrimeField, is_prime
from .polyring import (
    Monomial,
    Polynomial,
    PolySystem,
    TermOrder,
    count_monomials_upto,
    format_poly,
    monomials_of_degree,
    monomials_upto,
    parse_poly,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DegreeCapExceeded",
    "SolvedegError",
    "UsageError",
    "FieldElement",
    "PrimeField",
    "is_prime",
    "Monomial",
    "Polynomial",
    "PolySystem",
    "TermOrder",
    "count_monomials_upto",
    "format_poly",
    "monomials_of_degree",
    "monomials_upto",
    "parse_poly",
    "__version__",
]
