"""EDAP-versus-cost trade-off analysis over every feasible design a run evaluated."""

from __future__ import annotations

import csv
import math
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from imcdse.modules.evaluator.cache import EvaluationCache
from imcdse.modules.evaluator.models import ModelCoefficients
from imcdse.modules.objective.cost import cost as alpha_cost
from imcdse.modules.objective.models import ObjectiveSpec
from imcdse.modules.objective.service import aggregate
from imcdse.modules.search.engine import run_joint
from imcdse.modules.search.models import PhaseConfig, RunResult, SearchSizes
from imcdse.modules.search.scorer import Scorer
from imcdse.modules.space.models import DesignPoint, SearchSpace
from imcdse.modules.space.service import point_values
from imcdse.modules.workload.models import Workload
from imcdse.utils.logging import get_logger

TECH_SWEEP_SIZES = SearchSizes(p_h=1000, p_e=500, p_ga=70)


class EmptyFrontInputError(ValueError):
    """Raised when a Pareto front is requested for no points."""


@dataclass(frozen=True)
class TradePoint:
    """A feasible design placed on the EDAP and cost axes."""

    design: DesignPoint
    edap: float
    cost: float
    tech_nm: int

    def __post_init__(self) -> None:
        if not (self.edap > 0 and self.cost > 0):
            msg = f"trade-off axes must be positive (edap={self.edap}, cost={self.cost})"
            raise ValueError(msg)


def dominates(a: TradePoint, b: TradePoint) -> bool:
    """Whether a is no worse than b on both axes and strictly better on one."""
    return a.edap <= b.edap and a.cost <= b.cost and (a.edap < b.edap or a.cost < b.cost)


def pareto_front(points: Sequence[TradePoint]) -> list[TradePoint]:
    """Non-dominated points sorted by cost.

    Points equal on both axes collapse to the one with the lowest gene.

    Raises:
        EmptyFrontInputError: If points is empty
    """
    if not points:
        msg = "cannot build a Pareto front from no points"
        raise EmptyFrontInputError(msg)

    front: list[TradePoint] = []
    best_edap = math.inf
    for point in sorted(points, key=lambda p: (p.cost, p.edap, p.design.gene)):
        if point.edap < best_edap:
            front.append(point)
            best_edap = point.edap
    return front


@dataclass(frozen=True)
class TechSweepResult:
    """All feasible trade points of a sweep, its front and the underlying run."""

    points: list[TradePoint]
    front: list[TradePoint]
    run: RunResult
    space: SearchSpace


def trade_points(scorer: Scorer) -> list[TradePoint]:
    """Trade points of every feasible design in a scorer's archive."""
    aggregation = scorer.objective.aggregation
    points = []
    for design in scorer.feasible_scores():
        score = design.score
        edap = (
            aggregate([m.energy_mj for m in score.per_workload], aggregation)
            * aggregate([m.latency_ms for m in score.per_workload], aggregation)
            * score.area_mm2
        )
        tech_nm = int(design.params.get("tech", 32))
        cost = score.cost if score.cost is not None else alpha_cost(score.area_mm2, tech_nm)
        points.append(TradePoint(design=design.point, edap=edap, cost=cost, tech_nm=tech_nm))
    return points


def tech_sweep(
    space: SearchSpace,
    workloads: Sequence[Workload],
    objective: ObjectiveSpec,
    coeffs: ModelCoefficients,
    *,
    phases: Sequence[PhaseConfig] | None = None,
    sizes: SearchSizes = TECH_SWEEP_SIZES,
    seed: int = 0,
    cache: EvaluationCache | None = None,
    threads: int = 1,
) -> TechSweepResult:
    """Joint search with the technology node as a gene, then Pareto analysis.

    Every feasible design evaluated during the run becomes a trade point;
    designs over the area constraint never appear.
    """
    logger = get_logger()
    scorer = Scorer(space, workloads, objective, coeffs, cache=cache, threads=threads)
    run = run_joint(space, workloads, objective, coeffs, phases=phases, sizes=sizes, seed=seed, scorer=scorer)
    points = trade_points(scorer)
    front = pareto_front(points) if points else []
    logger.info("Tech sweep: %d feasible designs, %d on the front", len(points), len(front))
    return TechSweepResult(points=points, front=front, run=run, space=space)


def write_pareto_csv(result: TechSweepResult, path: Path) -> Path:
    """Write ``edap,cost,tech_nm,<parameter values...>,on_front``."""
    on_front = {p.design.gene for p in result.front}
    names = list(result.space.names)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["edap", "cost", "tech_nm", *names, "on_front"])
        for point in sorted(result.points, key=lambda p: (p.cost, p.edap, p.design.gene)):
            values = point_values(result.space, point.design)
            writer.writerow(
                [
                    repr(point.edap),
                    repr(point.cost),
                    point.tech_nm,
                    *(values[n] for n in names),
                    int(point.design.gene in on_front),
                ]
            )
    return path
