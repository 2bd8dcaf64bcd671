"""Hamming-distance diversity sampling of the initial population.

Pipeline: draw P_H capacity-feasible random designs (C1), greedily keep the
P_E most mutually distant ones (C2), score them and seed the GA with the P_GA
best feasible members.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from imcdse.modules.objective.models import JointScore
from imcdse.modules.search.models import (
    CandidatePool,
    EmptyReferenceSetError,
    GeneLengthMismatchError,
    PoolTooSmallError,
    SamplingExhaustedError,
    SearchSizes,
)
from imcdse.modules.search.scorer import Scorer
from imcdse.modules.space.models import DesignPoint, SearchSpace
from imcdse.utils.logging import get_logger

DRAW_BUDGET_FACTOR = 100


def hamming(x: DesignPoint, y: DesignPoint) -> int:
    """Number of parameters on which two designs differ.

    Raises:
        GeneLengthMismatchError: If the genes differ in length
    """
    if len(x.gene) != len(y.gene):
        msg = f"cannot compare genes of length {len(x.gene)} and {len(y.gene)}"
        raise GeneLengthMismatchError(msg)
    return sum(a != b for a, b in zip(x.gene, y.gene, strict=True))


def min_distance(x: DesignPoint, reference: Sequence[DesignPoint]) -> int:
    """Smallest Hamming distance from x to any member of a set.

    Raises:
        EmptyReferenceSetError: If the set is empty
    """
    if not reference:
        msg = "reference set is empty"
        raise EmptyReferenceSetError(msg)
    return min(hamming(x, member) for member in reference)


def greedy_order(pool: Sequence[DesignPoint], count: int) -> tuple[list[int], list[int]]:
    """Farthest-point selection order under Hamming distance.

    Starts from pool[0]; each step adds the candidate with the largest
    distance to its nearest selected point, lowest index on ties.

    Returns:
        Selected indices and the d_min value of each pick after the first

    Raises:
        PoolTooSmallError: If count exceeds the pool size or is below 1
    """
    if count > len(pool) or count < 1:
        msg = f"cannot select {count} designs from a pool of {len(pool)}"
        raise PoolTooSmallError(msg)

    genes = np.asarray([p.gene for p in pool], dtype=np.int64)
    selected = [0]
    picks: list[int] = []
    d_min = (genes != genes[0]).sum(axis=1)
    d_min[0] = -1
    while len(selected) < count:
        nxt = int(np.argmax(d_min))
        selected.append(nxt)
        picks.append(int(d_min[nxt]))
        d_min = np.minimum(d_min, (genes != genes[nxt]).sum(axis=1))
        d_min[nxt] = -1
    return selected, picks


def greedy_select(pool: Sequence[DesignPoint], count: int) -> list[DesignPoint]:
    """Pick ``count`` mutually distant designs from a pool (see greedy_order)."""
    indices, _ = greedy_order(pool, count)
    return [pool[i] for i in indices]


def sample_feasible(
    space: SearchSpace,
    count: int,
    rng: np.random.Generator,
    accept: Callable[[DesignPoint], bool],
    *,
    budget: int | None = None,
) -> tuple[list[DesignPoint], int]:
    """Rejection-sample random designs until ``count`` are accepted.

    Draws come in batches of the number still missing.

    Returns:
        Accepted points in draw order and the number of draws used

    Raises:
        SamplingExhaustedError: If the budget (default 100·count draws) runs out
    """
    budget = budget if budget is not None else DRAW_BUDGET_FACTOR * count
    sizes = np.asarray(space.sizes, dtype=np.int64)
    accepted: list[DesignPoint] = []
    draws = 0
    while len(accepted) < count:
        batch = min(count - len(accepted), budget - draws)
        if batch <= 0:
            msg = (
                f"found only {len(accepted)} of {count} feasible designs in {draws} draws; "
                "the space or workload set is over-constrained"
            )
            raise SamplingExhaustedError(msg)
        genes = rng.integers(0, sizes, size=(batch, len(sizes)))
        draws += batch
        for row in genes:
            point = DesignPoint(tuple(int(i) for i in row))
            if accept(point):
                accepted.append(point)
    return accepted, draws


@dataclass(frozen=True)
class SamplingResult:
    """Pools and bookkeeping of initial sampling."""

    c1: CandidatePool
    c2: CandidatePool
    elite: CandidatePool
    c2_scores: tuple[JointScore, ...]
    draws: int
    evals: int
    seconds: float


def initial_population(scorer: Scorer, sizes: SearchSizes, rng: np.random.Generator) -> SamplingResult:
    """Diversity-sampled initial population.

    Args:
        scorer: Scorer for the run's space, workloads and objective
        sizes: P_H, P_E and P_GA
        rng: The run's random generator

    Returns:
        SamplingResult with the P_GA elite

    Raises:
        SamplingExhaustedError: If C1 can't be filled or no C2 member is feasible
    """
    logger = get_logger()
    start = time.perf_counter()
    evals_before = scorer.eval_count

    c1, draws = sample_feasible(scorer.space, sizes.p_h, rng, scorer.capacity_ok)
    c2 = greedy_select(c1, sizes.p_e)
    scores = scorer.score_batch(c2)

    feasible = [i for i, s in enumerate(scores) if s.feasible]
    if not feasible:
        msg = f"none of the {len(c2)} diverse candidates satisfies the constraints"
        raise SamplingExhaustedError(msg)
    feasible.sort(key=lambda i: (scores[i].value, i))
    chosen = feasible[: sizes.p_ga]
    if len(chosen) < sizes.p_ga:
        logger.warning("Only %d feasible candidates for a population of %d; repeating them", len(chosen), sizes.p_ga)
        chosen = [chosen[i % len(chosen)] for i in range(sizes.p_ga)]
    elite = [c2[i] for i in chosen]

    seconds = time.perf_counter() - start
    evals = scorer.eval_count - evals_before
    logger.info(
        "Sampling: %d draws, C1=%d, C2=%d (%d feasible), elite=%d, %d evaluations in %.2fs",
        draws,
        len(c1),
        len(c2),
        len(feasible),
        len(elite),
        evals,
        seconds,
    )
    return SamplingResult(
        c1=CandidatePool(tuple(c1), "c1_random"),
        c2=CandidatePool(tuple(c2), "c2_diverse"),
        elite=CandidatePool(tuple(elite), "p_ga_elite"),
        c2_scores=tuple(scores),
        draws=draws,
        evals=evals,
        seconds=seconds,
    )
