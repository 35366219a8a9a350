"""Minkowski-weight rings of complete fans, specialised to the Gelfand-Zetlin fan."""
from __future__ import annotations

from .algebra import (
    GradedAlgebra,
    HomogeneousPolynomial,
    apolarity_algebra,
    degree1_isomorphism_check,
    gorenstein_quotient,
    has_poincare_duality,
    lefschetz_subalgebra,
    pairing_matrix,
    proportionality_scalar,
    top_power_polynomial,
)
from .fan import Fan, gz_fan, hypersimplex_fan, normal_fan
from .flag import borel_oracle, flag_cohomology, flag_degree, gz_volume_polynomial
from .mw import (
    MinkowskiWeight,
    divisor_weight,
    genericity_check,
    mw_algebra,
    mw_basis,
    mw_cup,
    mw_ranks,
    mw_smooth_oracle,
)
from .polytope import Polytope, gz_polytope, lattice_point_count, minkowski_sum, recognize_gz, volume
from .verify import VerificationReport, verify_main_theorem

__version__ = "0.1.0"

__all__ = [
    "GradedAlgebra",
    "HomogeneousPolynomial",
    "apolarity_algebra",
    "degree1_isomorphism_check",
    "gorenstein_quotient",
    "has_poincare_duality",
    "lefschetz_subalgebra",
    "pairing_matrix",
    "proportionality_scalar",
    "top_power_polynomial",
    "MinkowskiWeight",
    "divisor_weight",
    "genericity_check",
    "mw_algebra",
    "mw_basis",
    "mw_cup",
    "mw_ranks",
    "mw_smooth_oracle",
    "annotations",
    "Fan",
    "gz_fan",
    "hypersimplex_fan",
    "normal_fan",
    "borel_oracle",
    "flag_cohomology",
    "flag_degree",
    "gz_volume_polynomial",
    "Polytope",
    "gz_polytope",
    "lattice_point_count",
    "minkowski_sum",
    "recognize_gz",
    "volume",
    "VerificationReport",
    "verify_main_theorem",
]
