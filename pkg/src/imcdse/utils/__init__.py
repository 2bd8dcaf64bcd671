"""imcdse utility modules."""

from imcdse.utils.logging import (
    LogConfig,
    LogLevel,
    get_logger,
    reset_logger,
    setup_logging,
)
from imcdse.utils.settings import RunSettings

__all__ = [
    "LogConfig",
    "LogLevel",
    "RunSettings",
    "get_logger",
    "reset_logger",
    "setup_logging",
]
