"""Exact coefficient-ring arithmetic for the three theories."""

from .intlinalg import (hermite_normal_form, lattice_equal, smith_invariants,
                        smith_normal_form, solve_integer_linear, solve_rational_linear)
from .lazard import (ADDITIVE, MAX_TRUNCATION, MULTIPLICATIVE, LazardRing, TruncSeries,
                     fgl_inverse, fgl_sum, formal_multiple, lazard_ring)
from .poly import IntPoly, LaurentPoly, divides, exact_div, parse_poly
from .rational import RationalVector
from .theory import (Cobordism, Cohomology, KTheory, Theory, euler_of_character,
                     make_theory)

__all__ = [
    "ADDITIVE", "MAX_TRUNCATION", "MULTIPLICATIVE", "Cobordism", "Cohomology", "IntPoly",
    "KTheory", "LaurentPoly", "LazardRing", "RationalVector", "Theory", "TruncSeries",
    "divides", "euler_of_character", "exact_div", "fgl_inverse", "fgl_sum",
    "formal_multiple", "hermite_normal_form", "lattice_equal", "lazard_ring",
    "make_theory", "parse_poly", "smith_invariants", "smith_normal_form",
    "solve_integer_linear", "solve_rational_linear",
]
