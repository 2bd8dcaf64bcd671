"""Workload descriptor commands."""

from pathlib import Path
from typing import Annotated

import typer

from imcdse.commands.options import cli_errors
from imcdse.modules.workload import WORKLOAD_SETS, ZOO, resolve_workloads
from imcdse.presets import list_presets

app = typer.Typer(
    help="List and export workload descriptors.",
    context_settings={"help_option_names": ["-h", "--help"]},
)


@app.command("list")
def list_workloads() -> None:
    """List built-in workloads with their layer, weight and MAC counts."""
    typer.echo(f"{'name':<14} {'layers':>7} {'weights':>14} {'MACs':>16}")
    for name in sorted(ZOO):
        workload = ZOO[name]()
        typer.echo(f"{name:<14} {len(workload.layers):>7} {workload.weight_count:>14,} {workload.total_macs:>16,}")

    typer.echo("\nSets:")
    for name, members in WORKLOAD_SETS.items():
        typer.echo(f"  {name}: {', '.join(members)}")

    presets = list_presets("workloads")
    if presets:
        typer.echo(f"\nBundled descriptor files: {', '.join(presets)}")


@app.command()
def export(
    names: Annotated[list[str], typer.Argument(help="Workload names or set names to export")],
    out: Annotated[
        Path,
        typer.Option("--out", "-o", help="Directory for the JSON descriptors", file_okay=False),
    ] = Path("workloads"),
) -> None:
    """Write JSON descriptors of built-in workloads, one file per workload.

    Examples:
        imcdse workloads export vgg16 resnet18 --out descriptors/

        imcdse workloads export nine
    """
    with cli_errors():
        workloads = resolve_workloads(names)
        out.mkdir(parents=True, exist_ok=True)
        for workload in workloads:
            path = out / f"{workload.name}.json"
            path.write_text(workload.to_json() + "\n")
            typer.echo(f"Wrote {path}")
