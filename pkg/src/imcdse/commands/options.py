"""Shared option resolution for run commands.

Values are resolved with the precedence: CLI flag, then ``IMCDSE_*`` environment,
then the experiment file, then built-in defaults.
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Literal, TypeVar, get_args

import typer
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from imcdse.modules.evaluator import EvaluationCache, InfeasibleMappingError, ModelCoefficients, load_coefficients
from imcdse.modules.objective import AccuracyProvider, ObjectiveSpec, objective_spec, score_unit
from imcdse.modules.search import RunResult, SamplingExhaustedError, SearchSizes, Strategy
from imcdse.modules.space import SearchSpace, load_space
from imcdse.modules.workload import WORKLOAD_SETS, Workload, resolve_workloads
from imcdse.utils.logging import get_logger
from imcdse.utils.settings import RunSettings

EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3

HardwareMode = Literal["rram", "sram"]

T = TypeVar("T")


class ExperimentConfigError(ValueError):
    """Raised when an experiment file can't be read or validated."""


class StrategyError(ValueError):
    """Raised when a strategy name can't be used for a single-result study."""


class ModeMismatchError(ValueError):
    """Raised when the requested hardware mode contradicts the search space's execution mode."""


def parse_strategy(name: str, *, allow_separate: bool = False) -> Strategy:
    """Validate a strategy name.

    Studies that need one result per run reject 'separate' unless allowed.

    Raises:
        StrategyError: If the name is unknown, or is 'separate' when not allowed
    """
    if name == "separate" and not allow_separate:
        msg = "'separate' yields one result per workload; run it with 'baseline' instead"
        raise StrategyError(msg)
    for strategy in get_args(Strategy):
        if strategy == name:
            return strategy
    msg = f"Unknown strategy: '{name}' (expected one of: {', '.join(get_args(Strategy))})"
    raise StrategyError(msg)


def space_mode(space: SearchSpace) -> HardwareMode:
    """Hardware mode implied by a space's execution mode."""
    return "sram" if space.mode == "weight_swapping" else "rram"


def parse_mode(name: str) -> HardwareMode:
    """Validate a hardware mode name.

    Raises:
        ValueError: If the name is neither 'rram' nor 'sram'
    """
    for mode in get_args(HardwareMode):
        if mode == name.lower():
            return mode
    msg = f"Unknown hardware mode: '{name}' (expected one of: {', '.join(get_args(HardwareMode))})"
    raise ValueError(msg)


class ExperimentConfig(BaseModel):
    """Experiment file schema; every field is optional."""

    model_config = ConfigDict(extra="forbid")

    space: str | None = None
    workloads: list[str] | None = None
    objective: str | None = None
    aggregation: Literal["max", "all", "mean"] | None = None
    mode: HardwareMode | None = None
    seed: int | None = None
    p_h: int | None = Field(default=None, ge=1)
    p_e: int | None = Field(default=None, ge=1)
    p_ga: int | None = Field(default=None, ge=2)
    generations: int | None = Field(default=None, ge=0)
    patience: int | None = Field(default=None, ge=1)
    a_constr_mm2: float | None = Field(default=None, gt=0)
    coefficients: str | None = None
    accuracy: AccuracyProvider | None = None
    threads: int | None = Field(default=None, ge=1)
    cache: bool | None = None
    out: Path | None = None


def load_experiment(path: Path) -> ExperimentConfig:
    """Read an experiment YAML file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ExperimentConfigError: If the YAML is malformed or fails validation
    """
    try:
        content = path.read_text()
    except FileNotFoundError as e:
        msg = f"Experiment file not found: {path}"
        raise FileNotFoundError(msg) from e
    try:
        data = yaml.safe_load(content) or {}
    except yaml.YAMLError as e:
        msg = f"Invalid YAML in {path}: {e}"
        raise ExperimentConfigError(msg) from e
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        msg = f"Invalid experiment file {path}: {e}"
        raise ExperimentConfigError(msg) from e


@dataclass
class RunContext:
    """Everything a run command needs, fully resolved."""

    space: SearchSpace
    workloads: list[Workload]
    objective: ObjectiveSpec
    coeffs: ModelCoefficients
    sizes: SearchSizes
    generations: int
    seed: int
    patience: int | None
    threads: int
    cache: EvaluationCache
    out_dir: Path

    def fresh_cache(self) -> EvaluationCache:
        """An empty cache with the resolved on/off setting, for runs whose budgets are compared."""
        return EvaluationCache(enabled=self.cache.enabled)


def _first(*values: T | None, default: T) -> T:
    return next((v for v in values if v is not None), default)


def resolve_context(
    *,
    command: str,
    config: Path | None = None,
    space: str | None = None,
    workloads: list[str] | None = None,
    objective: str | None = None,
    aggregation: str | None = None,
    mode: str | None = None,
    seed: int | None = None,
    p_h: int | None = None,
    p_e: int | None = None,
    p_ga: int | None = None,
    generations: int | None = None,
    patience: int | None = None,
    a_constr_mm2: float | None = None,
    coefficients: str | None = None,
    threads: int | None = None,
    no_cache: bool = False,
    out: Path | None = None,
    default_mode: HardwareMode = "rram",
    default_space: str | None = None,
    default_workloads: list[str] | None = None,
    default_objective: str = "edap",
    default_sizes: SearchSizes | None = None,
) -> RunContext:
    """Merge CLI flags, environment, experiment file and defaults.

    Args:
        command: Command name, used for the default output directory
        config: Optional experiment YAML
        space: Space preset or path
        workloads: Workload references (sets, files, presets or zoo names)
        objective: Objective preset name
        aggregation: 'max', 'all' or 'mean'
        mode: 'rram' or 'sram'; picks the default space and coefficients
        seed: Random seed
        p_h: Random pool size
        p_e: Diverse pool size
        p_ga: GA population size
        generations: Generations per phase
        patience: Early-stop patience
        a_constr_mm2: Area constraint
        coefficients: Coefficient preset or path
        threads: Evaluation workers
        no_cache: Disable evaluation memoization
        out: Output directory
        default_mode: Hardware mode used when neither flag nor file names one
        default_space: Space used when neither flag nor file names one
        default_workloads: Workloads used when neither flag nor file names them
        default_objective: Objective used when neither flag nor file names one
        default_sizes: Population sizes used when neither flag nor file set them

    Returns:
        Resolved RunContext
    """
    logger = get_logger()
    file_cfg = load_experiment(config) if config is not None else ExperimentConfig()
    settings = RunSettings()

    requested = mode or file_cfg.mode
    explicit_mode = parse_mode(requested) if requested else None
    space_ref = space or file_cfg.space
    if space_ref is None:
        space_ref = default_space or explicit_mode or default_mode
        # A command default space yields to an explicitly requested mode
        if explicit_mode and default_space and space_mode(load_space(default_space)) != explicit_mode:
            space_ref = explicit_mode
    loaded_space = load_space(space_ref)
    hw_mode = space_mode(loaded_space)
    if explicit_mode is not None and explicit_mode != hw_mode:
        msg = (
            f"hardware mode '{explicit_mode}' contradicts space '{space_ref}' "
            f"({loaded_space.mode}, i.e. '{hw_mode}')"
        )
        raise ModeMismatchError(msg)
    coeff_ref = coefficients or file_cfg.coefficients or hw_mode
    workload_refs = workloads or file_cfg.workloads or default_workloads or list(WORKLOAD_SETS["default"])

    sizes_default = default_sizes or SearchSizes()
    sizes = SearchSizes(
        p_h=_first(p_h, file_cfg.p_h, default=sizes_default.p_h),
        p_e=_first(p_e, file_cfg.p_e, default=sizes_default.p_e),
        p_ga=_first(p_ga, file_cfg.p_ga, default=sizes_default.p_ga),
    )

    objective_name = objective or file_cfg.objective or default_objective
    spec = objective_spec(
        objective_name,
        aggregation=aggregation or file_cfg.aggregation or "max",
        a_constr_mm2=_first(a_constr_mm2, file_cfg.a_constr_mm2, default=800.0),
        accuracy=file_cfg.accuracy,
    )

    cache_enabled = not no_cache and _first(settings.cache, file_cfg.cache, default=True)
    out_dir = out or settings.out_dir or file_cfg.out or Path("results") / command
    n_threads = _first(threads, settings.threads, file_cfg.threads, default=1)

    context = RunContext(
        space=loaded_space,
        workloads=resolve_workloads(workload_refs),
        objective=spec,
        coeffs=load_coefficients(coeff_ref),
        sizes=sizes,
        generations=_first(generations, file_cfg.generations, default=10),
        seed=_first(seed, file_cfg.seed, default=0),
        patience=_first(patience, file_cfg.patience, default=None),
        threads=n_threads,
        cache=EvaluationCache(enabled=cache_enabled),
        out_dir=out_dir,
    )
    logger.info(
        "Run: space=%s workloads=%s objective=%s/%s seed=%d threads=%d cache=%s out=%s",
        space_ref,
        ",".join(w.name for w in context.workloads),
        objective_name,
        spec.aggregation,
        context.seed,
        context.threads,
        cache_enabled,
        out_dir,
    )
    return context


@contextmanager
def cli_errors() -> Iterator[None]:
    """Turn domain errors into a one-line diagnostic and an exit code.

    Configuration problems exit with 2; infeasible or exhausted searches with 3.
    """
    logger = get_logger()
    try:
        yield
    except (SamplingExhaustedError, InfeasibleMappingError) as e:
        logger.debug("Search failed", exc_info=e)
        typer.echo(f"Search failed: {e}", err=True)
        raise typer.Exit(EXIT_INFEASIBLE) from None
    except FileNotFoundError as e:
        logger.debug("File not found", exc_info=e)
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_CONFIG) from None
    except (ValueError, KeyError) as e:
        logger.debug("Configuration error", exc_info=e)
        typer.echo(f"Configuration error: {e}", err=True)
        raise typer.Exit(EXIT_CONFIG) from None


ConfigOption = Annotated[
    Path | None,
    typer.Option("--config", "-c", help="Experiment YAML file", exists=False, dir_okay=False),
]
SpaceOption = Annotated[
    str | None,
    typer.Option("--space", help="Search space preset (rram, rram-reduced, sram, sram-tech) or JSON path"),
]
WorkloadsOption = Annotated[
    list[str] | None,
    typer.Option(
        "--workloads",
        "-w",
        help="Workload set (default, nine), zoo name or descriptor file; repeatable",
    ),
]
ObjectiveOption = Annotated[
    str | None,
    typer.Option("--objective", help="Objective: edap, edp, energy, latency, area, ed-cost"),
]
AggregationOption = Annotated[
    str | None,
    typer.Option("--aggregation", "-a", help="Workload aggregation: max, all, mean"),
]
ModeOption = Annotated[
    str | None,
    typer.Option("--mode", "-m", help="Hardware mode: rram (weight-stationary) or sram (weight-swapping)"),
]
SeedOption = Annotated[int | None, typer.Option("--seed", "-s", help="Random seed")]
PhOption = Annotated[int | None, typer.Option("--ph", help="Random candidate pool size (P_H)")]
PeOption = Annotated[int | None, typer.Option("--pe", help="Diverse candidate pool size (P_E)")]
PgaOption = Annotated[int | None, typer.Option("--pga", help="GA population size (P_GA)")]
GenerationsOption = Annotated[int | None, typer.Option("--generations", "-g", help="Generations per phase (G)")]
PatienceOption = Annotated[
    int | None,
    typer.Option("--patience", help="End a phase after this many generations without improvement"),
]
AConstrOption = Annotated[float | None, typer.Option("--a-constr", help="Area constraint in mm²")]
CoefficientsOption = Annotated[
    str | None,
    typer.Option("--coefficients", help="Model coefficient preset (rram, sram) or JSON path"),
]
ThreadsOption = Annotated[
    int | None,
    typer.Option("--threads", "-t", help="Evaluation workers (env: IMCDSE_THREADS)", min=1),
]
NoCacheOption = Annotated[bool, typer.Option("--no-cache", help="Disable evaluation memoization")]
OutOption = Annotated[
    Path | None,
    typer.Option("--out", "-o", help="Output directory (env: IMCDSE_OUT_DIR)", file_okay=False),
]


def echo_result(result: RunResult) -> None:
    """Print the best design of a run with its per-workload metrics."""
    snapshot = result.snapshot
    best = result.best
    unit = score_unit(snapshot.objective, len(snapshot.workloads))
    target = f" (target {', '.join(result.target_workloads)})" if snapshot.target else ""
    typer.echo(f"Strategy {snapshot.strategy}, seed {snapshot.seed}{target}")
    if not best.score.feasible:
        typer.echo(f"  No feasible design found: {best.score.reason}")
    else:
        typer.echo(f"  Best score: {best.score.value:.6g} {unit}")
    typer.echo("  " + " ".join(f"{name}={value:g}" for name, value in best.params.items()))
    typer.echo(f"  Area: {best.score.area_mm2:.4g} mm²")
    for workload, metrics in zip(snapshot.workloads, best.score.per_workload, strict=False):
        typer.echo(
            f"  {workload.name}: E={metrics.energy_mj:.4g} mJ  L={metrics.latency_ms:.4g} ms  "
            f"EDAP={metrics.edap:.4g} mJ·ms·mm²"
        )
    typer.echo(f"  Evaluations: {result.eval_count} ({result.sampling_evals} during sampling)")
