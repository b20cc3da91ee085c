"""Sets of uniqueness relative to a finite polynomial class, and the weak-to-norm upgrade check."""

from .sets import FunctionClass, evaluation_matrix, evaluation_rank, is_uniqueness_set
from .upgrade import MAX_PROBE_SLOTS, NormUpgradeReport, Verdict, norm_upgrade_check, probe_set, weak_probe

__all__ = [
    "FunctionClass",
    "MAX_PROBE_SLOTS",
    "NormUpgradeReport",
    "Verdict",
    "evaluation_matrix",
    "evaluation_rank",
    "is_uniqueness_set",
    "norm_upgrade_check",
    "probe_set",
    "weak_probe",
]
