"""Hereditary kernels, the cone P and the model cone, and closure recovery."""

from src.gradedfun import embed_isometrically

from .closure import ClosureMode, ClosureReport, closure_recover
from .kernels import (
    HereditaryKernel,
    hermitian_defect,
    kernel_distance,
    kernel_from_function,
    mean_kernel,
    model_cone_element,
    pair_distances,
    positivity_floor,
    same_grading_pairs,
)

__all__ = [
    "ClosureMode",
    "ClosureReport",
    "HereditaryKernel",
    "closure_recover",
    "embed_isometrically",
    "hermitian_defect",
    "kernel_distance",
    "kernel_from_function",
    "mean_kernel",
    "model_cone_element",
    "pair_distances",
    "positivity_floor",
    "same_grading_pairs",
]
