"""Truncated H-valued graded functions, the unitary action and nc-axiom checks."""

from .axioms import NcCase, NcCheckReport, check_nc_axioms, direct_sum_residual, similarity_residual
from .functions import (
    UNITARY_TOL,
    GradedFunction,
    average,
    constant_function,
    evaluate,
    from_scalar_polys,
    unitary_action,
)
from .layout import check_value_shape, components, embed_isometrically, stack_components

__all__ = [
    "GradedFunction",
    "NcCase",
    "NcCheckReport",
    "UNITARY_TOL",
    "average",
    "check_nc_axioms",
    "check_value_shape",
    "components",
    "constant_function",
    "direct_sum_residual",
    "embed_isometrically",
    "evaluate",
    "from_scalar_polys",
    "similarity_residual",
    "stack_components",
    "unitary_action",
]
