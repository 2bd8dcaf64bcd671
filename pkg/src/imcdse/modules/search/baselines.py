"""Search-strategy baselines: separate, largest-workload and sequential stage-wise search."""

from __future__ import annotations

import time
from collections.abc import Sequence
from dataclasses import replace
from typing import Literal

import numpy as np

from imcdse.modules.evaluator.cache import EvaluationCache
from imcdse.modules.evaluator.models import ModelCoefficients
from imcdse.modules.objective.models import ObjectiveSpec
from imcdse.modules.search.engine import (
    evolve,
    finish_run,
    generation_stats,
    make_snapshot,
    random_variant,
    run_baseline_ga,
    run_joint,
)
from imcdse.modules.search.models import (
    PhaseConfig,
    RunResult,
    RunSnapshot,
    SearchSizes,
    Strategy,
    Timing,
    baseline_phase,
    default_phases,
)
from imcdse.modules.search.scorer import Scorer
from imcdse.modules.space.models import SearchSpace
from imcdse.modules.space.service import max_point, median_point
from imcdse.modules.workload.models import Workload
from imcdse.modules.workload.service import largest_workload
from imcdse.utils.logging import get_logger

StartConfig = Literal["max", "median"]

# Parameters tuned together, bottom of the stack first
STAGES: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("device", ("bits_cell",)),
    ("circuit", ("xbar_rows", "xbar_cols")),
    ("architecture", ("c_per_tile", "t_per_router", "g_per_chip", "glb")),
    ("system", ("v_op", "t_cycle", "tech")),
)


def run_separate(
    space: SearchSpace,
    workload: Workload,
    objective: ObjectiveSpec,
    coeffs: ModelCoefficients,
    *,
    phases: Sequence[PhaseConfig] | None = None,
    sizes: SearchSizes | None = None,
    seed: int = 0,
    cache: EvaluationCache | None = None,
    threads: int = 1,
    patience: int | None = None,
) -> RunResult:
    """Joint search restricted to a single workload."""
    return run_joint(
        space,
        [workload],
        objective,
        coeffs,
        phases=phases,
        sizes=sizes,
        seed=seed,
        cache=cache,
        threads=threads,
        patience=patience,
        strategy="separate",
    )


def run_largest(
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
) -> RunResult:
    """Optimize for the largest workload only, then score the result on every workload.

    The largest workload is the one with the biggest layer when weights are
    swapped, or the most weights when they stay resident.
    """
    logger = get_logger()
    cache = cache if cache is not None else EvaluationCache()
    target = largest_workload(workloads, space.mode)
    logger.info("Largest workload: %s", target.name)

    single = run_joint(
        space,
        [target],
        objective,
        coeffs,
        phases=phases,
        sizes=sizes,
        seed=seed,
        cache=cache,
        threads=threads,
        patience=patience,
        strategy="largest",
    )

    # Target-workload lookups hit the cache; only the other workloads add evaluations
    full = Scorer(space, workloads, objective, coeffs, cache=cache, threads=threads)
    full.score_batch([d.point for d in single.top_k] + [single.best.point])
    snapshot = single.snapshot.model_copy(update={"workloads": tuple(workloads), "target": target.name})
    return replace(
        single,
        snapshot=snapshot,
        best=full.scored(single.best.point),
        top_k=[full.scored(d.point) for d in single.top_k],
        eval_count=single.eval_count + full.eval_count,
        target_workloads=[target.name],
    )


def run_sequential(
    space: SearchSpace,
    workloads: Sequence[Workload],
    objective: ObjectiveSpec,
    coeffs: ModelCoefficients,
    *,
    start: StartConfig = "median",
    generations: int = 10,
    sizes: SearchSizes | None = None,
    seed: int = 0,
    cache: EvaluationCache | None = None,
    threads: int = 1,
    patience: int | None = None,
    stages: Sequence[tuple[str, Sequence[str]]] = STAGES,
) -> RunResult:
    """Stage-wise search: device, circuit, architecture, then system parameters.

    Every stage runs the plain GA over its own parameters with the others frozen
    at the incumbent, which starts at the largest or median option of every
    domain. The incumbent is part of each stage's population, so no stage makes
    it worse. Stages without a free parameter are skipped.
    """
    logger = get_logger()
    sizes = sizes or SearchSizes()
    scorer = Scorer(space, workloads, objective, coeffs, cache=cache, threads=threads)
    rng = np.random.default_rng(seed)
    began = time.perf_counter()

    incumbent = max_point(space) if start == "max" else median_point(space)
    history = [generation_stats(0, f"start-{start}", scorer.score_batch([incumbent]), scorer.eval_count)]
    sampling_evals = scorer.eval_count
    generation = 0
    phases: list[PhaseConfig] = []

    for stage, params in stages:
        free = [space.index_of(p) for p in params if p in space.names and space.sizes[space.index_of(p)] > 1]
        if not free:
            logger.debug("Stage %s has no free parameters; skipped", stage)
            continue
        phase = baseline_phase(generations).model_copy(update={"name": stage})
        phases.append(phase)

        free_idx = np.asarray(free, dtype=np.int64)
        population = [incumbent]
        while len(population) < sizes.p_ga:
            variant = random_variant(scorer, incumbent, free_idx, rng)
            population.append(variant if variant is not None else incumbent)

        ranked, generation = evolve(
            scorer, population, [phase], rng, history, free=free, patience=patience, generation=generation
        )
        incumbent = ranked[0]
        score = scorer.score(incumbent)
        logger.info("Stage %s: incumbent %s scores %.6g (feasible=%s)", stage, incumbent.gene, score.value, score.feasible)

    timing = Timing(sampling_s=0.0, search_s=time.perf_counter() - began)
    strategy: Strategy = "sequential-max" if start == "max" else "sequential-median"
    snapshot = make_snapshot(strategy, scorer, phases, sizes, seed, patience=patience)
    return finish_run(scorer, snapshot, history, sampling_evals=sampling_evals, timing=timing, best=incumbent)


def run_strategy(
    strategy: Strategy,
    space: SearchSpace,
    workloads: Sequence[Workload],
    objective: ObjectiveSpec,
    coeffs: ModelCoefficients,
    *,
    generations: int = 10,
    sizes: SearchSizes | None = None,
    seed: int = 0,
    cache: EvaluationCache | None = None,
    threads: int = 1,
    patience: int | None = None,
    phases: Sequence[PhaseConfig] | None = None,
) -> list[RunResult]:
    """Run one strategy; 'separate' yields one result per workload, the others one result.

    Args:
        strategy: Strategy name
        space: Search space
        workloads: Workload set
        objective: Joint objective
        coeffs: Model coefficients
        generations: Generations per phase (G); the plain GA runs the phased total
        sizes: Population sizes
        seed: Random seed
        cache: Shared evaluation cache
        threads: Evaluation workers
        patience: Optional early stop
        phases: Explicit phase schedule (default: four phases of G generations)
    """
    phases = tuple(phases) if phases is not None else default_phases(generations)
    cache = cache if cache is not None else EvaluationCache()

    if strategy == "joint":
        result = run_joint(
            space,
            workloads,
            objective,
            coeffs,
            phases=phases,
            sizes=sizes,
            seed=seed,
            cache=cache,
            threads=threads,
            patience=patience,
        )
        return [result]
    if strategy in ("plain-ga", "plain-ga-sampled"):
        result = run_baseline_ga(
            space,
            workloads,
            objective,
            coeffs,
            generations=sum(p.generations for p in phases),
            sizes=sizes,
            seed=seed,
            cache=cache,
            threads=threads,
            patience=patience,
            diverse_start=strategy == "plain-ga-sampled",
        )
        return [result]
    if strategy == "separate":
        return [
            run_separate(
                space,
                workload,
                objective,
                coeffs,
                phases=phases,
                sizes=sizes,
                seed=seed,
                cache=cache,
                threads=threads,
                patience=patience,
            )
            for workload in workloads
        ]
    if strategy == "largest":
        result = run_largest(
            space,
            workloads,
            objective,
            coeffs,
            phases=phases,
            sizes=sizes,
            seed=seed,
            cache=cache,
            threads=threads,
            patience=patience,
        )
        return [result]
    result = run_sequential(
        space,
        workloads,
        objective,
        coeffs,
        start="max" if strategy == "sequential-max" else "median",
        generations=phases[0].generations if phases else generations,
        sizes=sizes,
        seed=seed,
        cache=cache,
        threads=threads,
        patience=patience,
    )
    return [result]


def reproduce(snapshot: RunSnapshot, *, cache: EvaluationCache | None = None, threads: int = 1) -> RunResult:
    """Re-run a search from its snapshot alone."""
    results = run_strategy(
        snapshot.strategy,
        snapshot.space,
        snapshot.workloads,
        snapshot.objective,
        snapshot.coefficients,
        sizes=snapshot.sizes,
        seed=snapshot.seed,
        cache=cache,
        threads=threads,
        patience=snapshot.patience,
        phases=snapshot.phases,
    )
    return results[0]
