"""Truncated PBW model of the universal affine vertex algebra for simply-laced g."""
from .checks import (
    MaximalSubmodule,
    commutant_graded_dims,
    commuting_virasoro_check,
    generation_check,
    simple_quotient_graded_dims,
    universal_graded_dims,
    verify_generators,
    virasoro_bracket_check,
)
from .lie import LieData, NotSimplyLacedError, lie_data
from .pbw import BudgetError, TruncatedModule, TruncationError, pbw_dimension
from .vectors import (
    build_omega_alpha,
    build_W3_alpha,
    omega_aff,
    omega_coset,
    omega_h,
    singular_vector,
    vacuum,
    verify_singular,
    word,
)

__all__ = [
    "BudgetError",
    "LieData",
    "MaximalSubmodule",
    "NotSimplyLacedError",
    "TruncatedModule",
    "TruncationError",
    "build_W3_alpha",
    "build_omega_alpha",
    "commutant_graded_dims",
    "commuting_virasoro_check",
    "generation_check",
    "lie_data",
    "omega_aff",
    "omega_coset",
    "omega_h",
    "pbw_dimension",
    "simple_quotient_graded_dims",
    "singular_vector",
    "universal_graded_dims",
    "vacuum",
    "verify_generators",
    "verify_singular",
    "virasoro_bracket_check",
    "word",
]
