"""Objective types: term selection, aggregation, accuracy providers and scores."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from imcdse.modules.evaluator.models import HwMetrics

Term = Literal["energy", "latency", "area", "cost"]
Aggregation = Literal["max", "all", "mean"]

TERM_ORDER: tuple[Term, ...] = ("energy", "latency", "area", "cost")
TERM_UNITS: dict[Term, str] = {"energy": "mJ", "latency": "ms", "area": "mm²", "cost": "cost"}

OBJECTIVE_PRESETS: dict[str, tuple[Term, ...]] = {
    "edap": ("energy", "latency", "area"),
    "edp": ("energy", "latency"),
    "energy": ("energy",),
    "latency": ("latency",),
    "area": ("area",),
    "ed-cost": ("energy", "latency", "cost"),
}


class ObjectiveConfigError(ValueError):
    """Raised when an objective is misconfigured."""


class EmptyAggregationError(ValueError):
    """Raised when aggregating an empty list."""


class ConstantAccuracy(BaseModel):
    """The same accuracy for every design and workload."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["constant"] = "constant"
    value: float = Field(default=1.0, gt=0, le=1)

    def accuracy(self, workload: str, bits_per_cell: int) -> float:
        """Accuracy of a workload on a design."""
        return self.value


class TableAccuracy(BaseModel):
    """Tabulated accuracies, e.g. measured under device noise.

    Lookup order: ``per_bits_cell[bits][workload]``, then ``accuracies[workload]``,
    then ``default``.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["table"] = "table"
    accuracies: dict[str, Annotated[float, Field(gt=0, le=1)]] = Field(default_factory=dict)
    per_bits_cell: dict[int, dict[str, Annotated[float, Field(gt=0, le=1)]]] = Field(default_factory=dict)
    default: float = Field(default=1.0, gt=0, le=1)

    def accuracy(self, workload: str, bits_per_cell: int) -> float:
        """Accuracy of a workload on a design."""
        by_bits = self.per_bits_cell.get(bits_per_cell, {})
        if workload in by_bits:
            return by_bits[workload]
        return self.accuracies.get(workload, self.default)


AccuracyProvider = Annotated[ConstantAccuracy | TableAccuracy, Field(discriminator="kind")]


class ObjectiveSpec(BaseModel):
    """What a joint score multiplies and how workloads are combined."""

    model_config = ConfigDict(frozen=True)

    terms: tuple[Term, ...] = ("energy", "latency", "area")
    aggregation: Aggregation = "max"
    a_constr_mm2: float = Field(default=800.0, gt=0)
    accuracy: AccuracyProvider | None = None

    @field_validator("terms", mode="after")
    @classmethod
    def order_terms(cls, v: tuple[Term, ...]) -> tuple[Term, ...]:
        """Deduplicate terms into canonical order."""
        return tuple(term for term in TERM_ORDER if term in v)

    @model_validator(mode="after")
    def validate_terms(self) -> ObjectiveSpec:
        """At least one term; cost already scales with area, so never both."""
        if not self.terms:
            msg = "an objective needs at least one term"
            raise ValueError(msg)
        if "area" in self.terms and "cost" in self.terms:
            msg = "cost already scales with area; use either 'area' or 'cost'"
            raise ValueError(msg)
        return self


def objective_spec(
    name: str,
    aggregation: str = "max",
    a_constr_mm2: float = 800.0,
    accuracy: ConstantAccuracy | TableAccuracy | None = None,
) -> ObjectiveSpec:
    """Build an ObjectiveSpec from a preset name.

    Args:
        name: One of 'edap', 'edp', 'energy', 'latency', 'area', 'ed-cost'
        aggregation: 'max', 'all' or 'mean'
        a_constr_mm2: Area constraint
        accuracy: Optional accuracy provider

    Raises:
        ObjectiveConfigError: If the name or aggregation is unknown
    """
    terms = OBJECTIVE_PRESETS.get(name.lower())
    if terms is None:
        msg = f"Unknown objective: '{name}' (expected one of: {', '.join(OBJECTIVE_PRESETS)})"
        raise ObjectiveConfigError(msg)
    try:
        return ObjectiveSpec.model_validate(
            {"terms": terms, "aggregation": aggregation.lower(), "a_constr_mm2": a_constr_mm2, "accuracy": accuracy}
        )
    except ValueError as e:
        msg = f"Invalid objective: {e}"
        raise ObjectiveConfigError(msg) from e


@dataclass(frozen=True)
class JointScore:
    """Scalar score of one design over a workload set (lower is better)."""

    value: float
    feasible: bool
    per_workload: tuple[HwMetrics, ...] = ()
    area_mm2: float = 0.0
    cost: float | None = None
    reason: str | None = field(default=None, compare=False)
