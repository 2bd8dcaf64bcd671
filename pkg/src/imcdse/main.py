"""imcdse CLI - joint hardware-workload design-space exploration for in-memory computing."""

from pathlib import Path
from typing import Annotated

import typer

from imcdse import __version__
from imcdse.commands.run import baseline, optimize, repeat, reproduce_run
from imcdse.commands.study import aggregation_study, oracle, tech_sweep_command
from imcdse.commands.workloads import app as workloads_app
from imcdse.utils.logging import setup_logging

app = typer.Typer(
    help="imcdse - joint hardware-workload design-space exploration for in-memory computing.",
    context_settings={"help_option_names": ["-h", "--help"]},
)
app.command("optimize")(optimize)
app.command("baseline")(baseline)
app.command("repeat")(repeat)
app.command("reproduce")(reproduce_run)
app.command("aggregation-study")(aggregation_study)
app.command("tech-sweep")(tech_sweep_command)
app.command("oracle")(oracle)
app.add_typer(workloads_app, name="workloads")


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        typer.echo(f"imcdse {__version__}")
        raise typer.Exit()


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    version: Annotated[
        bool,
        typer.Option("--version", "-v", callback=version_callback, is_eager=True, help="Show version and exit."),
    ] = False,
    log_level: Annotated[
        str | None,
        typer.Option("--log-level", help="Log level: TRACE, DEBUG, INFO, WARN, ERROR, OFF", case_sensitive=False),
    ] = None,
    log_path: Annotated[
        Path | None,
        typer.Option("--log-path", help="File path for log output."),
    ] = None,
    log_json: Annotated[
        bool | None,
        typer.Option("--log-json/--no-log-json", help="Enable JSON log format."),
    ] = None,
) -> None:
    """imcdse CLI entry point."""
    # Logging must be configured before any command runs
    setup_logging(level=log_level, log_path=log_path, json_format=log_json)

    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())
