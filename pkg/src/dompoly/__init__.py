"""Exact decision procedures for dominant integer polynomials, and a census of them."""

from .bistritz import StabilityReport, count_outside, is_stable, t_recurse
from .bounds import BoundSet, bound_set, cauchy_bounds
from .dominance import (
    DominanceVerdict,
    decide,
    is_dominant,
    is_dominant_irreducible,
    is_dominant_simple,
    quick_quadratic,
)
from .factor import FactorWitness, is_irreducible, rational_roots
from .poly import BigRational, IntPolynomial, PolynomialParseError, RatPolynomial, parse_poly
from .sturm import Annulus, build_chain, locate_extreme_real_root

__version__ = "0.1.0"

__all__ = [
    "Annulus",
    "BigRational",
    "BoundSet",
    "DominanceVerdict",
    "FactorWitness",
    "IntPolynomial",
    "PolynomialParseError",
    "RatPolynomial",
    "StabilityReport",
    "bound_set",
    "build_chain",
    "cauchy_bounds",
    "count_outside",
    "decide",
    "is_dominant",
    "is_dominant_irreducible",
    "is_dominant_simple",
    "is_irreducible",
    "is_stable",
    "locate_extreme_real_root",
    "parse_poly",
    "quick_quadratic",
    "rational_roots",
    "t_recurse",
]
