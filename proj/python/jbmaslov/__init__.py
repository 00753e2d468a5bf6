"""Maslov index of paths of complex symmetric unitary matrices."""

from ._core import (
    InvalidArgument,
    NumericalFailure,
    SymUnitary,
    TripotentPath,
    bergman_matrix,
    check_formula_e,
    dim_intersection,
    jordan_inverse,
    kashiwara_index,
    lagrangian_to_tripotent,
    maslov_index,
    mu,
    perturbation_budget,
    relative_spectrum,
    triple_product,
    tripotent_to_lagrangian,
    validate_axioms,
    verify,
    winding_number,
)

__all__ = [
    "InvalidArgument",
    "NumericalFailure",
    "SymUnitary",
    "TripotentPath",
    "bergman_matrix",
    "check_formula_e",
    "dim_intersection",
    "jordan_inverse",
    "kashiwara_index",
    "lagrangian_to_tripotent",
    "maslov_index",
    "mu",
    "perturbation_budget",
    "relative_spectrum",
    "triple_product",
    "tripotent_to_lagrangian",
    "validate_axioms",
    "verify",
    "winding_number",
]
