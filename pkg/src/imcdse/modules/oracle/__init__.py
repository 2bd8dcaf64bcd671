"""Exhaustive landscapes of enumerable search spaces."""

from imcdse.modules.oracle.service import (
    DEFAULT_CAP,
    Landscape,
    NotInLandscapeError,
    OracleRow,
    SpaceTooLargeError,
    compare_run,
    exhaustive,
    rank_of,
    write_landscape_csv,
    write_oracle_csv,
)

__all__ = [
    "DEFAULT_CAP",
    "Landscape",
    "NotInLandscapeError",
    "OracleRow",
    "SpaceTooLargeError",
    "compare_run",
    "exhaustive",
    "rank_of",
    "write_landscape_csv",
    "write_oracle_csv",
]
