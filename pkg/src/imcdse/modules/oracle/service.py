"""Exhaustive evaluation of small search spaces."""

from __future__ import annotations

import csv
import math
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from imcdse.modules.evaluator.cache import EvaluationCache
from imcdse.modules.evaluator.models import ModelCoefficients
from imcdse.modules.objective.models import JointScore, ObjectiveSpec
from imcdse.modules.objective.service import score_key
from imcdse.modules.search.models import RunResult
from imcdse.modules.search.scorer import Scorer
from imcdse.modules.space.models import DesignPoint, SearchSpace
from imcdse.modules.space.service import enumerate_points, point_values, space_size
from imcdse.modules.workload.models import Workload
from imcdse.utils.logging import get_logger

DEFAULT_CAP = 100_000


class SpaceTooLargeError(ValueError):
    """Raised when a space is too large to enumerate."""


class NotInLandscapeError(KeyError):
    """Raised when a design is not part of a landscape."""


@dataclass(frozen=True)
class Landscape:
    """Score of every design point of a space, keyed by gene."""

    space: SearchSpace
    entries: dict[tuple[int, ...], JointScore]

    @property
    def feasible(self) -> list[tuple[tuple[int, ...], JointScore]]:
        """Feasible entries with finite scores, best first."""
        items = [(g, s) for g, s in self.entries.items() if s.feasible and math.isfinite(s.value)]
        return sorted(items, key=lambda item: score_key(item[1], item[0]))

    @property
    def feasible_count(self) -> int:
        """Number of feasible entries."""
        return len(self.feasible)

    @property
    def global_min(self) -> tuple[DesignPoint, JointScore] | None:
        """Best feasible entry, lowest gene on ties; None when nothing is feasible."""
        feasible = self.feasible
        if not feasible:
            return None
        gene, score = feasible[0]
        return DesignPoint(gene), score

    def __len__(self) -> int:
        return len(self.entries)


def exhaustive(
    space: SearchSpace,
    workloads: Sequence[Workload],
    objective: ObjectiveSpec,
    coeffs: ModelCoefficients,
    *,
    cap: int = DEFAULT_CAP,
    reverse: bool = False,
    cache: EvaluationCache | None = None,
    threads: int = 1,
) -> Landscape:
    """Evaluate every point of a space.

    Args:
        space: Space to enumerate
        workloads: Workload set scored jointly
        objective: Objective specification
        coeffs: Evaluator coefficients
        cap: Largest space size accepted
        reverse: Enumerate in reverse lexicographic order
        cache: Evaluation cache shared with other runs
        threads: Worker threads

    Raises:
        SpaceTooLargeError: If the space has more than ``cap`` points
    """
    size = space_size(space)
    if size > cap:
        msg = f"space has {size} points, more than the enumeration cap of {cap}"
        raise SpaceTooLargeError(msg)

    logger = get_logger()
    logger.info("Enumerating %d designs over %d workloads", size, len(workloads))
    scorer = Scorer(space, workloads, objective, coeffs, cache=cache, threads=threads)
    points = list(enumerate_points(space, reverse=reverse))
    scores = scorer.score_batch(points)
    # independent of enumeration order
    entries = {p.gene: s for p, s in sorted(zip(points, scores, strict=True), key=lambda item: item[0].gene)}
    landscape = Landscape(space=space, entries=entries)
    logger.info("Landscape: %d designs, %d feasible", len(landscape), landscape.feasible_count)
    return landscape


def rank_of(design: DesignPoint, landscape: Landscape) -> int:
    """1 plus the number of feasible entries scoring strictly lower.

    Raises:
        NotInLandscapeError: If the design was not enumerated
    """
    if design.gene not in landscape.entries:
        msg = f"design {design.gene} is not in the landscape"
        raise NotInLandscapeError(msg)
    value = landscape.entries[design.gene].value
    return 1 + sum(1 for _, s in landscape.feasible if s.value < value)


@dataclass(frozen=True)
class OracleRow:
    """How one run's best design compares to the global optimum."""

    strategy: str
    seed: int
    best_score: float
    rank: int
    hit: bool
    evals: int


def compare_run(run: RunResult, landscape: Landscape) -> OracleRow:
    """Rank a run's best design against the landscape."""
    global_min = landscape.global_min
    rank = rank_of(run.best.point, landscape)
    hit = global_min is not None and run.best.score.value <= global_min[1].value
    return OracleRow(
        strategy=run.snapshot.strategy,
        seed=run.snapshot.seed,
        best_score=run.best.score.value,
        rank=rank,
        hit=hit,
        evals=run.eval_count,
    )


def write_landscape_csv(landscape: Landscape, path: Path) -> Path:
    """Write ``<parameter values...>,score,feasible,area_mm2,rank``."""
    names = list(landscape.space.names)
    ranks: dict[tuple[int, ...], int] = {}
    lower = 0
    previous = None
    for i, (gene, score) in enumerate(landscape.feasible):
        if score.value != previous:
            lower = i
            previous = score.value
        ranks[gene] = lower + 1

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow([*names, "score", "feasible", "area_mm2", "rank"])
        for gene, score in landscape.entries.items():
            values = point_values(landscape.space, DesignPoint(gene))
            writer.writerow(
                [
                    *(values[n] for n in names),
                    repr(score.value) if math.isfinite(score.value) else "",
                    int(score.feasible),
                    repr(score.area_mm2),
                    ranks.get(gene, ""),
                ]
            )
    return path


def write_oracle_csv(rows: Sequence[OracleRow], path: Path) -> Path:
    """Write ``strategy,seed,best_score,rank,hit,evals``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["strategy", "seed", "best_score", "rank", "hit", "evals"])
        for row in rows:
            writer.writerow([row.strategy, row.seed, repr(row.best_score), row.rank, int(row.hit), row.evals])
    return path
