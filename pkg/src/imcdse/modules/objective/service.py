"""Joint multi-workload scoring."""

from __future__ import annotations

import math
from collections.abc import Sequence

from imcdse.modules.evaluator.models import HwMetrics
from imcdse.modules.objective.cost import cost
from imcdse.modules.objective.models import (
    TERM_UNITS,
    Aggregation,
    EmptyAggregationError,
    JointScore,
    ObjectiveSpec,
)


def aggregate(values: Sequence[float], scheme: Aggregation) -> float:
    """Combine per-workload values: max, product ('all') or arithmetic mean.

    Values are sorted first so the result never depends on workload order.

    Raises:
        EmptyAggregationError: If values is empty
    """
    if not values:
        msg = "cannot aggregate an empty list"
        raise EmptyAggregationError(msg)
    ordered = sorted(values)
    if scheme == "max":
        return ordered[-1]
    if scheme == "all":
        return math.prod(ordered)
    return math.fsum(ordered) / len(ordered)


def joint_score(
    per_workload: Sequence[HwMetrics],
    area_mm2: float,
    spec: ObjectiveSpec,
    *,
    tech_nm: int = 32,
    accuracies: Sequence[float] | None = None,
) -> JointScore:
    """Score a design that maps every workload.

    Energy and latency are aggregated across workloads; area and cost enter
    once. Accuracies, when given, divide the product.
    """
    factors = []
    for term in spec.terms:
        if term == "energy":
            factors.append(aggregate([m.energy_mj for m in per_workload], spec.aggregation))
        elif term == "latency":
            factors.append(aggregate([m.latency_ms for m in per_workload], spec.aggregation))
        elif term == "area":
            factors.append(area_mm2)
        else:
            factors.append(cost(area_mm2, tech_nm))
    value = math.prod(factors)
    if accuracies:
        value /= math.prod(sorted(accuracies))

    feasible = area_mm2 <= spec.a_constr_mm2
    return JointScore(
        value=value,
        feasible=feasible,
        per_workload=tuple(per_workload),
        area_mm2=area_mm2,
        cost=cost(area_mm2, tech_nm) if "cost" in spec.terms else None,
        reason=None if feasible else f"area {area_mm2:.1f} mm² exceeds {spec.a_constr_mm2:g} mm²",
    )


def infeasible_score(area_mm2: float, reason: str) -> JointScore:
    """Score of a design that cannot map at least one workload."""
    return JointScore(value=math.inf, feasible=False, area_mm2=area_mm2, reason=reason)


def score_key(score: JointScore, gene: tuple[int, ...]) -> tuple[bool, float, tuple[int, ...]]:
    """Total order: feasible first, then by value, then by gene."""
    return (not score.feasible, score.value, gene)


def score_unit(spec: ObjectiveSpec, n_workloads: int = 1) -> str:
    """Unit string of a score, e.g. 'mJ·ms·mm²'."""
    parts = []
    for term in spec.terms:
        unit = TERM_UNITS[term]
        if spec.aggregation == "all" and term in ("energy", "latency") and n_workloads > 1:
            unit = f"{unit}^{n_workloads}"
        parts.append(unit)
    if spec.accuracy is not None:
        parts.append("acc⁻¹")
    return "·".join(parts)
