"""Search commands: optimize, baseline, repeat and reproduce."""

import csv
import math
from dataclasses import astuple, dataclass
from pathlib import Path
from typing import Annotated

import numpy as np
import typer

from imcdse.commands.options import (
    AConstrOption,
    AggregationOption,
    CoefficientsOption,
    ConfigOption,
    GenerationsOption,
    ModeOption,
    NoCacheOption,
    ObjectiveOption,
    OutOption,
    PatienceOption,
    PeOption,
    PgaOption,
    PhOption,
    SeedOption,
    SpaceOption,
    ThreadsOption,
    WorkloadsOption,
    cli_errors,
    echo_result,
    parse_strategy,
    resolve_context,
)
from imcdse.modules.evaluator import EvaluationCache
from imcdse.modules.search import (
    RunResult,
    default_phases,
    load_snapshot,
    reproduce,
    run_joint,
    run_strategy,
    write_run,
)
from imcdse.utils.logging import get_logger

REPEAT_HEADER = ("strategy", "seed", "best_score", "feasible", "evals", "sampling_s", "search_s")
REPEAT_SUMMARY_HEADER = ("strategy", "runs", "feasible_runs", "mean", "std", "min", "max", "std_ratio")


def _write_results(results: list[RunResult], out_dir: Path) -> None:
    if len(results) == 1:
        paths = write_run(results[0], out_dir)
    else:
        paths = []
        for result in results:
            paths.extend(write_run(result, out_dir / result.target_workloads[0]))
    for path in paths:
        typer.echo(f"Wrote {path}")


def optimize(
    config: ConfigOption = None,
    space: SpaceOption = None,
    workloads: WorkloadsOption = None,
    objective: ObjectiveOption = None,
    aggregation: AggregationOption = None,
    mode: ModeOption = None,
    seed: SeedOption = None,
    ph: PhOption = None,
    pe: PeOption = None,
    pga: PgaOption = None,
    generations: GenerationsOption = None,
    patience: PatienceOption = None,
    a_constr: AConstrOption = None,
    coefficients: CoefficientsOption = None,
    threads: ThreadsOption = None,
    no_cache: NoCacheOption = False,
    out: OutOption = None,
) -> None:
    """Jointly optimize one hardware design for a set of workloads.

    Runs diversity-based sampling followed by the four-phase genetic search and
    writes run.json, convergence.csv and timing.json.

    Examples:
        imcdse optimize --seed 7

        imcdse optimize --mode sram -w default -w gpt2-medium --aggregation mean
    """
    with cli_errors():
        ctx = resolve_context(
            command="optimize",
            config=config,
            space=space,
            workloads=workloads,
            objective=objective,
            aggregation=aggregation,
            mode=mode,
            seed=seed,
            p_h=ph,
            p_e=pe,
            p_ga=pga,
            generations=generations,
            patience=patience,
            a_constr_mm2=a_constr,
            coefficients=coefficients,
            threads=threads,
            no_cache=no_cache,
            out=out,
        )
        result = run_joint(
            ctx.space,
            ctx.workloads,
            ctx.objective,
            ctx.coeffs,
            phases=default_phases(ctx.generations),
            sizes=ctx.sizes,
            seed=ctx.seed,
            cache=ctx.cache,
            threads=ctx.threads,
            patience=ctx.patience,
        )
        echo_result(result)
        _write_results([result], ctx.out_dir)


def baseline(
    strategy: Annotated[
        str,
        typer.Option(
            "--strategy",
            help="plain-ga, plain-ga-sampled, separate, largest, sequential-max or sequential-median",
        ),
    ] = "plain-ga",
    config: ConfigOption = None,
    space: SpaceOption = None,
    workloads: WorkloadsOption = None,
    objective: ObjectiveOption = None,
    aggregation: AggregationOption = None,
    mode: ModeOption = None,
    seed: SeedOption = None,
    ph: PhOption = None,
    pe: PeOption = None,
    pga: PgaOption = None,
    generations: GenerationsOption = None,
    patience: PatienceOption = None,
    a_constr: AConstrOption = None,
    coefficients: CoefficientsOption = None,
    threads: ThreadsOption = None,
    no_cache: NoCacheOption = False,
    out: OutOption = None,
) -> None:
    """Run a comparison strategy.

    'separate' writes one run directory per workload; 'largest' reports the
    design found for the largest workload scored on the whole set.

    Examples:
        imcdse baseline --strategy largest --seed 3

        imcdse baseline --strategy sequential-median -g 20
    """
    with cli_errors():
        name = parse_strategy(strategy, allow_separate=True)
        ctx = resolve_context(
            command=f"baseline-{name}",
            config=config,
            space=space,
            workloads=workloads,
            objective=objective,
            aggregation=aggregation,
            mode=mode,
            seed=seed,
            p_h=ph,
            p_e=pe,
            p_ga=pga,
            generations=generations,
            patience=patience,
            a_constr_mm2=a_constr,
            coefficients=coefficients,
            threads=threads,
            no_cache=no_cache,
            out=out,
        )
        results = run_strategy(
            name,
            ctx.space,
            ctx.workloads,
            ctx.objective,
            ctx.coeffs,
            generations=ctx.generations,
            sizes=ctx.sizes,
            seed=ctx.seed,
            cache=ctx.cache,
            threads=ctx.threads,
            patience=ctx.patience,
        )
        for result in results:
            echo_result(result)
        _write_results(results, ctx.out_dir)


@dataclass(frozen=True)
class RepeatRow:
    """Best score of one seeded run."""

    strategy: str
    seed: int
    best_score: float
    feasible: bool
    evals: int
    sampling_s: float
    search_s: float


@dataclass(frozen=True)
class RepeatSummary:
    """Spread of best scores over the feasible runs of one strategy."""

    strategy: str
    runs: int
    feasible_runs: int
    mean: float
    std: float
    min: float
    max: float
    std_ratio: float


def summarize_repeats(rows: list[RepeatRow]) -> list[RepeatSummary]:
    """Per-strategy statistics; std_ratio is relative to the first strategy's std."""
    summary: list[RepeatSummary] = []
    reference_std: float | None = None
    for strategy in dict.fromkeys(r.strategy for r in rows):
        runs = [r for r in rows if r.strategy == strategy]
        scores = np.asarray([r.best_score for r in runs if r.feasible], dtype=float)
        if scores.size:
            mean, std = float(scores.mean()), float(scores.std())
            lo, hi = float(scores.min()), float(scores.max())
        else:
            mean = std = lo = hi = math.nan
        if reference_std is None:
            reference_std = std
        ratio = std / reference_std if reference_std else math.nan
        summary.append(RepeatSummary(strategy, len(runs), int(scores.size), mean, std, lo, hi, ratio))
    return summary


def repeat(
    runs: Annotated[int, typer.Option("--runs", "-n", help="Number of seeds per strategy", min=1)] = 10,
    strategies: Annotated[
        list[str] | None,
        typer.Option("--strategy", help="Strategy to repeat; repeatable (default: joint)"),
    ] = None,
    config: ConfigOption = None,
    space: SpaceOption = None,
    workloads: WorkloadsOption = None,
    objective: ObjectiveOption = None,
    aggregation: AggregationOption = None,
    mode: ModeOption = None,
    seed: Annotated[int | None, typer.Option("--seed", "-s", help="First seed")] = None,
    ph: PhOption = None,
    pe: PeOption = None,
    pga: PgaOption = None,
    generations: GenerationsOption = None,
    patience: PatienceOption = None,
    a_constr: AConstrOption = None,
    coefficients: CoefficientsOption = None,
    threads: ThreadsOption = None,
    no_cache: NoCacheOption = False,
    out: OutOption = None,
) -> None:
    """Repeat searches over consecutive seeds and summarize their spread.

    Writes repeat.csv (one row per run) and repeat_summary.csv (mean, standard
    deviation and range of the best scores per strategy; std_ratio is relative
    to the first strategy). Each run gets an empty cache so evaluation counts
    and timings are comparable across seeds.

    Examples:
        imcdse repeat -n 25 --strategy joint --strategy plain-ga
    """
    logger = get_logger()
    with cli_errors():
        names = [parse_strategy(name) for name in strategies or ["joint"]]

        ctx = resolve_context(
            command="repeat",
            config=config,
            space=space,
            workloads=workloads,
            objective=objective,
            aggregation=aggregation,
            mode=mode,
            seed=seed,
            p_h=ph,
            p_e=pe,
            p_ga=pga,
            generations=generations,
            patience=patience,
            a_constr_mm2=a_constr,
            coefficients=coefficients,
            threads=threads,
            no_cache=no_cache,
            out=out,
        )
        rows: list[RepeatRow] = []
        for name in names:
            for run_seed in range(ctx.seed, ctx.seed + runs):
                logger.info("Repeat: %s seed %d", name, run_seed)
                result = run_strategy(
                    name,
                    ctx.space,
                    ctx.workloads,
                    ctx.objective,
                    ctx.coeffs,
                    generations=ctx.generations,
                    sizes=ctx.sizes,
                    seed=run_seed,
                    cache=ctx.fresh_cache(),
                    threads=ctx.threads,
                    patience=ctx.patience,
                )[0]
                rows.append(
                    RepeatRow(
                        strategy=name,
                        seed=run_seed,
                        best_score=result.best.score.value,
                        feasible=result.best.score.feasible,
                        evals=result.eval_count,
                        sampling_s=result.timing.sampling_s,
                        search_s=result.timing.search_s,
                    )
                )

        ctx.out_dir.mkdir(parents=True, exist_ok=True)
        runs_path = ctx.out_dir / "repeat.csv"
        with runs_path.open("w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(REPEAT_HEADER)
            for r in rows:
                writer.writerow(
                    [r.strategy, r.seed, repr(r.best_score), int(r.feasible), r.evals, repr(r.sampling_s), repr(r.search_s)]
                )

        summary = summarize_repeats(rows)
        summary_path = ctx.out_dir / "repeat_summary.csv"
        with summary_path.open("w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(REPEAT_SUMMARY_HEADER)
            for s in summary:
                writer.writerow([s.strategy, s.runs, s.feasible_runs, *(repr(v) for v in astuple(s)[3:])])

        typer.echo(f"{'strategy':<20} {'runs':>5} {'feasible':>9} {'mean':>12} {'std':>12} {'std ratio':>10}")
        for s in summary:
            typer.echo(
                f"{s.strategy:<20} {s.runs:>5} {s.feasible_runs:>9} {s.mean:>12.5g} {s.std:>12.5g} {s.std_ratio:>10.3g}"
            )
        typer.echo(f"Wrote {runs_path}")
        typer.echo(f"Wrote {summary_path}")


def reproduce_run(
    record: Annotated[Path, typer.Argument(help="Path to a run.json written by a previous run")],
    threads: ThreadsOption = None,
    out: OutOption = None,
) -> None:
    """Re-run a search from the configuration embedded in its run record.

    Exits with 1 when the reproduced best design differs from the recorded one.
    """
    with cli_errors():
        snapshot, recorded = load_snapshot(record)
        result = reproduce(snapshot, cache=EvaluationCache(), threads=threads or 1)
        echo_result(result)
        if out is not None:
            _write_results([result], out)

        expected = recorded.get("best", {}).get("gene")
        if expected is not None and list(result.best.point.gene) != list(expected):
            typer.echo(f"Mismatch: recorded best {expected}, reproduced {list(result.best.point.gene)}", err=True)
            raise typer.Exit(1)
        typer.echo("Reproduced the recorded best design.")
