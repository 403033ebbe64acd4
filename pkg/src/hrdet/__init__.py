"""Exact degree maps, orders of vanishing and Hodge-Riemann determinants for
Artinian reductions of face rings of oriented pseudomanifolds."""

from .artinian import (
    GramReport,
    HilbertReport,
    hilbert_report,
    hr_gram,
    lefschetz_check,
    novik_swartz,
    primitive_determinants,
    select_basis,
)
from .complex import SimplicialComplex, fixture, orient, stellar_subdivide, topology_report
from .degree import DegreeEngine, FaceMonomial, generic_lsop, numeric_lsop, theta_punctured
from .fields import QQ, BinaryField, PrimeField, parse_char
from .verify import (
    CheckOutcome,
    check_fixture_formulas,
    check_middledegree,
    check_ord_profile,
    check_strongg,
)

__all__ = [
    "QQ",
    "BinaryField",
    "CheckOutcome",
    "DegreeEngine",
    "FaceMonomial",
    "GramReport",
    "HilbertReport",
    "PrimeField",
    "SimplicialComplex",
    "check_fixture_formulas",
    "check_middledegree",
    "check_ord_profile",
    "check_strongg",
    "fixture",
    "generic_lsop",
    "hilbert_report",
    "hr_gram",
    "lefschetz_check",
    "novik_swartz",
    "numeric_lsop",
    "orient",
    "parse_char",
    "primitive_determinants",
    "select_basis",
    "stellar_subdivide",
    "theta_punctured",
    "topology_report",
]
