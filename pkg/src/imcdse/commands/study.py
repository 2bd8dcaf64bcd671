"""Study commands: aggregation-study, tech-sweep and oracle."""

import csv
import statistics
from typing import Annotated

import typer

from imcdse.commands.options import (
    AConstrOption,
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
    parse_strategy,
    resolve_context,
)
from imcdse.modules.oracle import DEFAULT_CAP, compare_run, exhaustive, write_landscape_csv, write_oracle_csv
from imcdse.modules.pareto import TECH_SWEEP_SIZES, tech_sweep, write_pareto_csv
from imcdse.modules.search import default_phases, run_joint, run_strategy, write_run
from imcdse.utils.logging import get_logger

AGGREGATION_HEADER = (
    "aggregation",
    "workload",
    "energy_mj",
    "latency_ms",
    "area_mm2",
    "edap",
    "score",
    "total_s",
    "evals",
)
AGGREGATIONS = ("max", "all", "mean")
ORACLE_WORKLOADS = ["resnet18", "mobilenetv3"]


def aggregation_study(
    config: ConfigOption = None,
    space: SpaceOption = None,
    workloads: WorkloadsOption = None,
    objective: ObjectiveOption = None,
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
    """Compare the max, all and mean aggregation schemes side by side.

    Each scheme runs the joint search from the same seed with its own
    evaluation cache. Writes aggregation.csv with the per-workload metrics of
    each scheme's best design and the wall time of its search.
    """
    logger = get_logger()
    with cli_errors():
        ctx = resolve_context(
            command="aggregation-study",
            config=config,
            space=space,
            workloads=workloads,
            objective=objective,
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
        rows: list[list[object]] = []
        wall: dict[str, float] = {}
        edaps: dict[tuple[str, str], float] = {}
        for scheme in AGGREGATIONS:
            spec = ctx.objective.model_copy(update={"aggregation": scheme})
            logger.info("Aggregation study: %s", scheme)
            result = run_joint(
                ctx.space,
                ctx.workloads,
                spec,
                ctx.coeffs,
                phases=default_phases(ctx.generations),
                sizes=ctx.sizes,
                seed=ctx.seed,
                cache=ctx.fresh_cache(),
                threads=ctx.threads,
                patience=ctx.patience,
            )
            write_run(result, ctx.out_dir / scheme)
            wall[scheme] = result.timing.total_s
            best = result.best.score
            for workload, metrics in zip(ctx.workloads, best.per_workload, strict=False):
                edaps[scheme, workload.name] = metrics.edap
                rows.append(
                    [
                        scheme,
                        workload.name,
                        repr(metrics.energy_mj),
                        repr(metrics.latency_ms),
                        repr(metrics.area_mm2),
                        repr(metrics.edap),
                        repr(best.value),
                        repr(result.timing.total_s),
                        result.eval_count,
                    ]
                )

        ctx.out_dir.mkdir(parents=True, exist_ok=True)
        path = ctx.out_dir / "aggregation.csv"
        with path.open("w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(AGGREGATION_HEADER)
            writer.writerows(rows)

        typer.echo(f"{'workload':<16}" + "".join(f"{scheme:>14}" for scheme in AGGREGATIONS))
        for workload in ctx.workloads:
            cells = []
            for scheme in AGGREGATIONS:
                edap = edaps.get((scheme, workload.name))
                cells.append(f"{edap:>14.4g}" if edap is not None else f"{'-':>14}")
            typer.echo(f"{workload.name:<16}" + "".join(cells))
        typer.echo(f"{'wall time (s)':<16}" + "".join(f"{wall[scheme]:>14.2f}" for scheme in AGGREGATIONS))
        fastest = min(wall, key=lambda s: wall[s])
        typer.echo(f"Fastest: {fastest} (max took {wall['max'] / wall[fastest]:.2f}x the fastest)")
        typer.echo(f"Wrote {path}")


def tech_sweep_command(
    config: ConfigOption = None,
    space: SpaceOption = None,
    workloads: WorkloadsOption = None,
    objective: ObjectiveOption = None,
    mode: ModeOption = None,
    seed: SeedOption = None,
    ph: PhOption = None,
    pe: PeOption = None,
    pga: PgaOption = None,
    generations: GenerationsOption = None,
    a_constr: AConstrOption = None,
    coefficients: CoefficientsOption = None,
    threads: ThreadsOption = None,
    no_cache: NoCacheOption = False,
    out: OutOption = None,
) -> None:
    """Search with the technology node as a parameter and extract the EDAP-cost front.

    Defaults to the sram-tech space, the ed-cost objective and a population of 70.
    Writes pareto.csv with every feasible design evaluated and an on_front flag.
    """
    with cli_errors():
        ctx = resolve_context(
            command="tech-sweep",
            config=config,
            space=space,
            workloads=workloads,
            objective=objective,
            mode=mode,
            seed=seed,
            p_h=ph,
            p_e=pe,
            p_ga=pga,
            generations=generations,
            a_constr_mm2=a_constr,
            coefficients=coefficients,
            threads=threads,
            no_cache=no_cache,
            out=out,
            default_mode="sram",
            default_space="sram-tech",
            default_objective="ed-cost",
            default_sizes=TECH_SWEEP_SIZES,
        )
        result = tech_sweep(
            ctx.space,
            ctx.workloads,
            ctx.objective,
            ctx.coeffs,
            phases=default_phases(ctx.generations),
            sizes=ctx.sizes,
            seed=ctx.seed,
            cache=ctx.cache,
            threads=ctx.threads,
        )
        write_run(result.run, ctx.out_dir)
        path = write_pareto_csv(result, ctx.out_dir / "pareto.csv")

        typer.echo(f"{len(result.points)} feasible designs, {len(result.front)} on the Pareto front")
        typer.echo(f"{'tech (nm)':>10} {'cost':>12} {'EDAP':>14}")
        for point in result.front:
            typer.echo(f"{point.tech_nm:>10} {point.cost:>12.4g} {point.edap:>14.4g}")
        typer.echo(f"Wrote {path}")


def oracle(
    runs: Annotated[int, typer.Option("--runs", "-n", help="Seeds per strategy", min=0)] = 10,
    strategies: Annotated[
        list[str] | None,
        typer.Option("--strategy", help="Strategy to rank; repeatable (default: joint and plain-ga)"),
    ] = None,
    cap: Annotated[int, typer.Option("--cap", help="Largest space to enumerate", min=1)] = DEFAULT_CAP,
    config: ConfigOption = None,
    space: SpaceOption = None,
    workloads: WorkloadsOption = None,
    objective: ObjectiveOption = None,
    mode: ModeOption = None,
    seed: Annotated[int | None, typer.Option("--seed", "-s", help="First seed")] = None,
    ph: PhOption = None,
    pe: PeOption = None,
    pga: PgaOption = None,
    generations: GenerationsOption = None,
    coefficients: CoefficientsOption = None,
    threads: ThreadsOption = None,
    no_cache: NoCacheOption = False,
    out: OutOption = None,
) -> None:
    """Enumerate a small space exhaustively and rank search results against it.

    Defaults to the rram-reduced space with resnet18 and mobilenetv3. Writes
    landscape.csv (every design with its score and rank) and oracle.csv (rank of
    each run's best design and whether it hit the global optimum). Every run
    starts from an empty cache so its evaluation count is its own search effort.
    """
    logger = get_logger()
    with cli_errors():
        names = [parse_strategy(name) for name in strategies or ["joint", "plain-ga"]]
        ctx = resolve_context(
            command="oracle",
            config=config,
            space=space,
            workloads=workloads,
            objective=objective,
            mode=mode,
            seed=seed,
            p_h=ph,
            p_e=pe,
            p_ga=pga,
            generations=generations,
            coefficients=coefficients,
            threads=threads,
            no_cache=no_cache,
            out=out,
            default_space="rram-reduced",
            default_workloads=ORACLE_WORKLOADS,
        )
        landscape = exhaustive(
            ctx.space,
            ctx.workloads,
            ctx.objective,
            ctx.coeffs,
            cap=cap,
            cache=ctx.cache,
            threads=ctx.threads,
        )
        landscape_path = write_landscape_csv(landscape, ctx.out_dir / "landscape.csv")
        global_min = landscape.global_min
        typer.echo(f"{len(landscape)} designs, {landscape.feasible_count} feasible")
        if global_min is None:
            typer.echo("No feasible design in the space.")
            typer.echo(f"Wrote {landscape_path}")
            return
        point, score = global_min
        typer.echo(f"Global optimum {list(point.gene)}: {score.value:.6g}")

        rows = []
        for name in names:
            for run_seed in range(ctx.seed, ctx.seed + runs):
                logger.info("Oracle: %s seed %d", name, run_seed)
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
                )[0]
                rows.append(compare_run(result, landscape))
        oracle_path = write_oracle_csv(rows, ctx.out_dir / "oracle.csv")

        for name in names:
            mine = [r for r in rows if r.strategy == name]
            if not mine:
                continue
            hits = sum(r.hit for r in mine)
            median_rank = statistics.median(r.rank for r in mine)
            typer.echo(f"{name}: {hits}/{len(mine)} runs reached the global optimum (median rank {median_rank:g})")
        typer.echo(f"Wrote {landscape_path}")
        typer.echo(f"Wrote {oracle_path}")
