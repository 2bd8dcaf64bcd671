"""Joint scoring of design points with a per-run archive and parallel evaluation."""

from __future__ import annotations

import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed

from imcdse.modules.evaluator.cache import EvaluationCache, lookup_or_evaluate
from imcdse.modules.evaluator.models import InfeasibleMappingError, ModelCoefficients
from imcdse.modules.evaluator.service import area
from imcdse.modules.objective.models import JointScore, ObjectiveSpec
from imcdse.modules.objective.service import infeasible_score, joint_score, score_key
from imcdse.modules.search.models import ScoredDesign
from imcdse.modules.space.models import DesignPoint, Mode, SearchSpace
from imcdse.modules.space.service import cell_capacity, decode, point_values
from imcdse.modules.workload.models import Workload
from imcdse.modules.workload.service import required_cells
from imcdse.utils.logging import TRACE, get_logger


class Scorer:
    """Scores design points against a workload set.

    Every scored design is archived; the archive feeds top-k reporting and
    Pareto analysis. ``eval_count`` counts evaluator calls that missed the
    cache, so designs another run already evaluated on a shared cache are free.
    """

    def __init__(
        self,
        space: SearchSpace,
        workloads: Sequence[Workload],
        objective: ObjectiveSpec,
        coeffs: ModelCoefficients,
        *,
        cache: EvaluationCache | None = None,
        threads: int = 1,
    ) -> None:
        if not workloads:
            msg = "at least one workload is required"
            raise ValueError(msg)
        self.space = space
        self.workloads = tuple(workloads)
        self.objective = objective
        self.coeffs = coeffs
        self.cache = cache if cache is not None else EvaluationCache()
        self.threads = max(1, threads)
        self.archive: dict[tuple[int, ...], JointScore] = {}
        self.eval_count = 0
        self._required: dict[int, int] = {}

    @property
    def mode(self) -> Mode:
        """Execution mode of the space."""
        return self.space.mode

    def required_capacity(self, bits_per_cell: int) -> int:
        """Cells the largest workload needs at a given bits-per-cell."""
        if bits_per_cell not in self._required:
            self._required[bits_per_cell] = max(required_cells(w, bits_per_cell) for w in self.workloads)
        return self._required[bits_per_cell]

    def capacity_ok(self, point: DesignPoint) -> bool:
        """Whether a design can hold every workload (always true when swapping weights)."""
        if self.space.mode == "weight_swapping":
            return True
        config = decode(self.space, point)
        return cell_capacity(config) >= self.required_capacity(config.bits_per_cell)

    def score(self, point: DesignPoint) -> JointScore:
        """Score one design point."""
        return self.score_batch([point])[0]

    def score_batch(self, points: Sequence[DesignPoint]) -> list[JointScore]:
        """Score design points, evaluating each new design once.

        Results come back in input order regardless of worker scheduling.
        """
        pending: list[DesignPoint] = []
        seen: set[tuple[int, ...]] = set()
        for point in points:
            if point.gene not in self.archive and point.gene not in seen:
                seen.add(point.gene)
                pending.append(point)

        if pending:
            results = self._evaluate_all(pending)
            for point, (score, misses) in zip(pending, results, strict=True):
                self.archive[point.gene] = score
                self.eval_count += misses
        return [self.archive[point.gene] for point in points]

    def _evaluate_all(self, points: list[DesignPoint]) -> list[tuple[JointScore, int]]:
        if self.threads == 1 or len(points) == 1:
            return [self._evaluate(point) for point in points]

        logger = get_logger()
        logger.log(TRACE, "Scoring %d designs on %d threads", len(points), self.threads)
        results: list[tuple[JointScore, int] | None] = [None] * len(points)
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            futures = {executor.submit(self._evaluate, point): i for i, point in enumerate(points)}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
        return [r for r in results if r is not None]

    def _evaluate(self, point: DesignPoint) -> tuple[JointScore, int]:
        config = decode(self.space, point)
        chip_area = area(config, self.coeffs)
        metrics = []
        misses = 0
        for workload in self.workloads:
            outcome, missed = lookup_or_evaluate(self.cache, point, config, workload, self.space.mode, self.coeffs)
            misses += int(missed)
            if isinstance(outcome, InfeasibleMappingError):
                return infeasible_score(chip_area, str(outcome)), misses
            metrics.append(outcome)

        accuracies = None
        if self.objective.accuracy is not None:
            accuracies = [self.objective.accuracy.accuracy(w.name, config.bits_per_cell) for w in self.workloads]
        return joint_score(metrics, chip_area, self.objective, tech_nm=config.tech_nm, accuracies=accuracies), misses

    def scored(self, point: DesignPoint) -> ScoredDesign:
        """Archived score of a point together with its parameter values."""
        return ScoredDesign(point=point, params=point_values(self.space, point), score=self.score(point))

    def ranked(self) -> list[ScoredDesign]:
        """Every archived design, best first."""
        genes = sorted(self.archive, key=lambda g: score_key(self.archive[g], g))
        return [self.scored(DesignPoint(g)) for g in genes]

    def best(self) -> ScoredDesign:
        """Best archived design."""
        if not self.archive:
            msg = "nothing has been scored yet"
            raise ValueError(msg)
        gene = min(self.archive, key=lambda g: score_key(self.archive[g], g))
        return self.scored(DesignPoint(gene))

    def top_k(self, k: int = 5) -> list[ScoredDesign]:
        """The k best distinct archived designs."""
        return self.ranked()[:k]

    def feasible_scores(self) -> list[ScoredDesign]:
        """Archived feasible designs with finite scores, best first."""
        return [d for d in self.ranked() if d.score.feasible and math.isfinite(d.score.value)]
