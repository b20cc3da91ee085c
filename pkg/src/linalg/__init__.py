"""Dense complex-matrix substrate: norms, orthonormal increments, unitary completion."""

from .operators import (
    DEFAULT_RANK_TOL,
    ampliate,
    as_complex_matrix,
    as_vector,
    block_diag,
    complete_to_unitary,
    condition_number,
    extend_to_basis,
    gram_residual,
    min_hermitian_eigenvalue,
    operator_norm,
    orthonormal_increment,
    unitarity_residual,
)

__all__ = [
    "DEFAULT_RANK_TOL",
    "ampliate",
    "as_complex_matrix",
    "as_vector",
    "block_diag",
    "complete_to_unitary",
    "condition_number",
    "extend_to_basis",
    "gram_residual",
    "min_hermitian_eigenvalue",
    "operator_norm",
    "orthonormal_increment",
    "unitarity_residual",
]
