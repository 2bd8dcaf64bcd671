"""Diversity sampling, genetic search engine, baselines and run records."""

from imcdse.modules.search.baselines import (
    STAGES,
    reproduce,
    run_largest,
    run_separate,
    run_sequential,
    run_strategy,
)
from imcdse.modules.search.diversity import (
    SamplingResult,
    greedy_order,
    greedy_select,
    hamming,
    initial_population,
    min_distance,
    sample_feasible,
)
from imcdse.modules.search.engine import evolve, run_baseline_ga, run_joint
from imcdse.modules.search.models import (
    CandidatePool,
    EmptyReferenceSetError,
    GeneLengthMismatchError,
    GenerationStats,
    PhaseConfig,
    PoolTooSmallError,
    RunResult,
    RunSnapshot,
    SamplingExhaustedError,
    ScoredDesign,
    SearchSizes,
    Strategy,
    Timing,
    baseline_phase,
    default_phases,
)
from imcdse.modules.search.operators import polynomial_mutation, sbx_crossover, tournament
from imcdse.modules.search.records import RecordError, load_snapshot, result_to_record, write_run
from imcdse.modules.search.scorer import Scorer

__all__ = [
    "STAGES",
    "CandidatePool",
    "EmptyReferenceSetError",
    "GeneLengthMismatchError",
    "GenerationStats",
    "PhaseConfig",
    "PoolTooSmallError",
    "RecordError",
    "RunResult",
    "RunSnapshot",
    "SamplingExhaustedError",
    "SamplingResult",
    "ScoredDesign",
    "Scorer",
    "SearchSizes",
    "Strategy",
    "Timing",
    "baseline_phase",
    "default_phases",
    "evolve",
    "greedy_order",
    "greedy_select",
    "hamming",
    "initial_population",
    "load_snapshot",
    "min_distance",
    "polynomial_mutation",
    "reproduce",
    "result_to_record",
    "run_baseline_ga",
    "run_joint",
    "run_largest",
    "run_separate",
    "run_sequential",
    "run_strategy",
    "sample_feasible",
    "sbx_crossover",
    "tournament",
    "write_run",
]
