"""Genetic search: the phased GA loop, the joint run and the plain GA baseline."""

from __future__ import annotations

import math
import time
from collections.abc import Sequence

import numpy as np

from imcdse.modules.evaluator.cache import EvaluationCache
from imcdse.modules.evaluator.models import ModelCoefficients
from imcdse.modules.objective.models import JointScore, ObjectiveSpec
from imcdse.modules.objective.service import score_key
from imcdse.modules.search.diversity import initial_population, sample_feasible
from imcdse.modules.search.models import (
    GenerationStats,
    PhaseConfig,
    RunResult,
    RunSnapshot,
    SearchSizes,
    Strategy,
    Timing,
    baseline_phase,
    default_phases,
)
from imcdse.modules.search.operators import polynomial_mutation, sbx_crossover, tournament
from imcdse.modules.search.scorer import Scorer
from imcdse.modules.space.models import DesignPoint, SearchSpace
from imcdse.modules.space.service import from_real, real_bounds, to_real
from imcdse.modules.workload.models import Workload
from imcdse.utils.logging import get_logger

TOP_K = 5
INJECT_ATTEMPTS = 100


def generation_stats(generation: int, phase: str, scores: Sequence[JointScore], evals: int) -> GenerationStats:
    """Best and mean over the feasible members of a population (inf when none)."""
    values = [s.value for s in scores if s.feasible and math.isfinite(s.value)]
    return GenerationStats(
        generation=generation,
        phase=phase,
        best_score=min(values) if values else math.inf,
        mean_score=math.fsum(values) / len(values) if values else math.inf,
        evals=evals,
    )


def rank_population(population: Sequence[DesignPoint], scores: Sequence[JointScore]) -> list[DesignPoint]:
    """Sort a population best first: feasible, then value, then gene."""
    order = sorted(range(len(population)), key=lambda i: score_key(scores[i], population[i].gene))
    return [population[i] for i in order]


def random_variant(
    scorer: Scorer,
    base: DesignPoint,
    free: np.ndarray,
    rng: np.random.Generator,
    *,
    attempts: int = INJECT_ATTEMPTS,
) -> DesignPoint | None:
    """Randomize the free genes of a design until it passes the capacity check."""
    sizes = np.asarray(scorer.space.sizes, dtype=np.int64)[free]
    for _ in range(attempts):
        gene = np.asarray(base.gene, dtype=np.int64)
        gene[free] = rng.integers(0, sizes)
        point = DesignPoint(tuple(int(i) for i in gene))
        if scorer.capacity_ok(point):
            return point
    return None


def breed(
    space: SearchSpace,
    ranked: Sequence[DesignPoint],
    phase: PhaseConfig,
    rng: np.random.Generator,
    free: np.ndarray,
) -> list[DesignPoint]:
    """Next generation: the best design carried over, the rest bred from tournament winners.

    Only the genes listed in ``free`` are recombined and mutated; the others are
    taken from the first parent.
    """
    lower, upper = real_bounds(space)
    lower, upper = lower[free], upper[free]
    size = len(ranked)
    offspring = [ranked[0]]
    while len(offspring) < size:
        a = to_real(ranked[tournament(size, rng)])
        b = to_real(ranked[tournament(size, rng)])
        children = sbx_crossover(a[free], b[free], phase.eta_c, phase.p_c, rng, lower, upper)
        for child in children:
            if len(offspring) == size:
                break
            mutated = polynomial_mutation(child, phase.eta_m, phase.p_m, rng, lower, upper, phase.per_gene_prob)
            full = a.copy()
            full[free] = mutated
            offspring.append(from_real(space, full))
    return offspring


def evolve(
    scorer: Scorer,
    population: Sequence[DesignPoint],
    phases: Sequence[PhaseConfig],
    rng: np.random.Generator,
    history: list[GenerationStats],
    *,
    free: Sequence[int] | None = None,
    patience: int | None = None,
    generation: int = 0,
) -> tuple[list[DesignPoint], int]:
    """Run GA phases from an initial population.

    Each generation keeps the best design, fills the rest by tournament
    selection, SBX and polynomial mutation, scores it and appends a history
    row. A population that stays identical for 2·G generations gets one
    random design injected per generation.

    Args:
        scorer: Scorer of the run
        population: Initial population (its size is kept)
        phases: Phase schedule, applied in order
        rng: The run's random generator
        history: Convergence rows, appended in place
        free: Gene positions to search (all when None)
        patience: End a phase after this many generations without improvement
        generation: Number of the last recorded generation

    Returns:
        Final ranked population and the last generation number
    """
    logger = get_logger()
    free_idx = np.arange(len(scorer.space.domains)) if free is None else np.asarray(free, dtype=np.int64)
    ranked = rank_population(population, scorer.score_batch(population))
    identical = 0

    for phase in phases:
        best_seen = history[-1].best_score if history else math.inf
        stale = 0
        for _ in range(phase.generations):
            identical = identical + 1 if len({p.gene for p in ranked}) == 1 else 0
            offspring = breed(scorer.space, ranked, phase, rng, free_idx)
            if identical >= 2 * phase.generations:
                fresh = random_variant(scorer, ranked[0], free_idx, rng)
                if fresh is not None:
                    offspring[-1] = fresh
                    logger.info("Population collapsed for %d generations; injected %s", identical, fresh.gene)

            scores = scorer.score_batch(offspring)
            generation += 1
            stats = generation_stats(generation, phase.name, scores, scorer.eval_count)
            history.append(stats)
            ranked = rank_population(offspring, scores)
            logger.debug(
                "Best %.6g, mean %.6g",
                stats.best_score,
                stats.mean_score,
                extra={"phase": phase.name, "generation": generation, "evals": stats.evals},
            )

            if stats.best_score < best_seen:
                best_seen, stale = stats.best_score, 0
            else:
                stale += 1
            if patience is not None and stale >= patience:
                logger.info("Phase %s stopped after %d stale generations", phase.name, stale)
                break

        logger.info(
            "Phase %s done: best %.6g after %d evaluations",
            phase.name,
            best_seen,
            scorer.eval_count,
            extra={"phase": phase.name, "evals": scorer.eval_count},
        )
    return ranked, generation


def make_snapshot(
    strategy: Strategy,
    scorer: Scorer,
    phases: Sequence[PhaseConfig],
    sizes: SearchSizes,
    seed: int,
    *,
    patience: int | None = None,
    target: str | None = None,
) -> RunSnapshot:
    """Configuration snapshot embedded in every run record."""
    return RunSnapshot(
        strategy=strategy,
        seed=seed,
        space=scorer.space,
        workloads=scorer.workloads,
        objective=scorer.objective,
        coefficients=scorer.coeffs,
        phases=tuple(phases),
        sizes=sizes,
        patience=patience,
        target=target,
    )


def finish_run(
    scorer: Scorer,
    snapshot: RunSnapshot,
    history: list[GenerationStats],
    *,
    sampling_evals: int,
    timing: Timing,
    draws: int = 0,
    best: DesignPoint | None = None,
) -> RunResult:
    """Assemble a RunResult from the scorer's archive."""
    logger = get_logger()
    result = RunResult(
        snapshot=snapshot,
        best=scorer.scored(best) if best is not None else scorer.best(),
        top_k=scorer.top_k(TOP_K),
        history=history,
        eval_count=scorer.eval_count,
        sampling_evals=sampling_evals,
        target_workloads=[w.name for w in scorer.workloads],
        timing=timing,
        draws=draws,
    )
    stats = scorer.cache.stats()
    logger.info(
        "%s run (seed %d): best %.6g (%s), %d evaluations, cache %d hits / %d misses, sampling %.2fs, search %.2fs",
        snapshot.strategy,
        snapshot.seed,
        result.best.score.value,
        "feasible" if result.best.score.feasible else "infeasible",
        result.eval_count,
        stats.hits,
        stats.misses,
        timing.sampling_s,
        timing.search_s,
        extra={"strategy": snapshot.strategy, "seed": snapshot.seed},
    )
    return result


def _scorer(
    space: SearchSpace,
    workloads: Sequence[Workload],
    objective: ObjectiveSpec,
    coeffs: ModelCoefficients,
    cache: EvaluationCache | None,
    threads: int,
) -> Scorer:
    return Scorer(space, workloads, objective, coeffs, cache=cache, threads=threads)


def run_joint(
    space: SearchSpace,
    workloads: Sequence[Workload],
    objective: ObjectiveSpec,
    coeffs: ModelCoefficients,
    *,
    phases: Sequence[PhaseConfig] | None = None,
    sizes: SearchSizes | None = None,
    seed: int = 0,
    cache: EvaluationCache | None = None,
    threads: int = 1,
    patience: int | None = None,
    scorer: Scorer | None = None,
    strategy: Strategy = "joint",
) -> RunResult:
    """Four-phase GA over the joint objective, seeded by diversity sampling.

    Raises:
        SamplingExhaustedError: If no feasible initial population can be found
    """
    phases = tuple(phases) if phases is not None else default_phases()
    sizes = sizes or SearchSizes()
    scorer = scorer or _scorer(space, workloads, objective, coeffs, cache, threads)
    rng = np.random.default_rng(seed)

    start = time.perf_counter()
    sampling = initial_population(scorer, sizes, rng)
    population = list(sampling.elite.points)
    history = [generation_stats(0, "sampling", scorer.score_batch(population), scorer.eval_count)]
    sampling_evals = scorer.eval_count
    sampled = time.perf_counter()

    evolve(scorer, population, phases, rng, history, patience=patience)
    timing = Timing(sampling_s=sampled - start, search_s=time.perf_counter() - sampled)

    snapshot = make_snapshot(strategy, scorer, phases, sizes, seed, patience=patience)
    return finish_run(
        scorer, snapshot, history, sampling_evals=sampling_evals, timing=timing, draws=sampling.draws
    )


def run_baseline_ga(
    space: SearchSpace,
    workloads: Sequence[Workload],
    objective: ObjectiveSpec,
    coeffs: ModelCoefficients,
    *,
    generations: int = 40,
    sizes: SearchSizes | None = None,
    seed: int = 0,
    cache: EvaluationCache | None = None,
    threads: int = 1,
    patience: int | None = None,
    diverse_start: bool = False,
) -> RunResult:
    """Single-phase GA with fixed operator settings.

    The initial population is P_GA random capacity-feasible designs, or the
    diversity-sampled elite when ``diverse_start`` is set.

    Args:
        space: Search space
        workloads: Workload set
        objective: Joint objective
        coeffs: Model coefficients
        generations: Total generations (match the phased run's total for equal budgets)
        sizes: Population sizes
        seed: Random seed
        cache: Shared evaluation cache
        threads: Evaluation workers
        patience: Optional early stop
        diverse_start: Seed from diversity sampling instead of random draws

    Raises:
        SamplingExhaustedError: If not enough feasible designs can be drawn
    """
    sizes = sizes or SearchSizes()
    phases = (baseline_phase(generations),)
    scorer = _scorer(space, workloads, objective, coeffs, cache, threads)
    rng = np.random.default_rng(seed)

    start = time.perf_counter()
    if diverse_start:
        sampling = initial_population(scorer, sizes, rng)
        population, draws = list(sampling.elite.points), sampling.draws
    else:
        population, draws = sample_feasible(space, sizes.p_ga, rng, scorer.capacity_ok)
    history = [generation_stats(0, "sampling", scorer.score_batch(population), scorer.eval_count)]
    sampling_evals = scorer.eval_count
    sampled = time.perf_counter()

    evolve(scorer, population, phases, rng, history, patience=patience)
    timing = Timing(sampling_s=sampled - start, search_s=time.perf_counter() - sampled)

    strategy: Strategy = "plain-ga-sampled" if diverse_start else "plain-ga"
    snapshot = make_snapshot(strategy, scorer, phases, sizes, seed, patience=patience)
    return finish_run(scorer, snapshot, history, sampling_evals=sampling_evals, timing=timing, draws=draws)
