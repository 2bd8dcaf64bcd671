"""Joint objectives, aggregation schemes and the technology cost model."""

from imcdse.modules.objective.cost import (
    TECH_NODES,
    TechNode,
    UnknownTechNodeError,
    alpha,
    cost,
    recompute_alpha,
    tech_node,
)
from imcdse.modules.objective.models import (
    OBJECTIVE_PRESETS,
    AccuracyProvider,
    Aggregation,
    ConstantAccuracy,
    EmptyAggregationError,
    JointScore,
    ObjectiveConfigError,
    ObjectiveSpec,
    TableAccuracy,
    Term,
    objective_spec,
)
from imcdse.modules.objective.service import aggregate, infeasible_score, joint_score, score_key, score_unit

__all__ = [
    "OBJECTIVE_PRESETS",
    "TECH_NODES",
    "AccuracyProvider",
    "Aggregation",
    "ConstantAccuracy",
    "EmptyAggregationError",
    "JointScore",
    "ObjectiveConfigError",
    "ObjectiveSpec",
    "TableAccuracy",
    "TechNode",
    "Term",
    "UnknownTechNodeError",
    "aggregate",
    "alpha",
    "cost",
    "infeasible_score",
    "joint_score",
    "objective_spec",
    "recompute_alpha",
    "score_key",
    "score_unit",
    "tech_node",
]
