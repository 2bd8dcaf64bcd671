"""Analytical evaluator: energy, latency and area of a design running a workload."""

from imcdse.modules.evaluator.cache import CacheStats, EvaluationCache, cached_evaluate, lookup_or_evaluate
from imcdse.modules.evaluator.models import (
    CoefficientsError,
    HwMetrics,
    InfeasibleMappingError,
    ModelCoefficients,
    ZeroWorkloadError,
)
from imcdse.modules.evaluator.service import area, evaluate, layer_table, load_coefficients, swap_rounds

__all__ = [
    "CacheStats",
    "CoefficientsError",
    "EvaluationCache",
    "HwMetrics",
    "InfeasibleMappingError",
    "ModelCoefficients",
    "ZeroWorkloadError",
    "area",
    "cached_evaluate",
    "evaluate",
    "layer_table",
    "load_coefficients",
    "lookup_or_evaluate",
    "swap_rounds",
]
