"""Tests for logging module."""

import json
import logging
import sys
from unittest.mock import patch

from typer.testing import CliRunner

from imcdse.main import app
from imcdse.utils.logging import (
    TRACE,
    LogConfig,
    LogLevel,
    SearchFormatter,
    SearchJsonFormatter,
    get_logger,
    setup_logging,
)


def _record(level=logging.INFO, msg="Test message", args=(), exc_info=None):
    return logging.LogRecord(
        name="test", level=level, pathname="", lineno=0, msg=msg, args=args, exc_info=exc_info
    )


class TestLogLevel:
    def test_trace_below_debug(self):
        assert LogLevel.TRACE < LogLevel.DEBUG
        assert LogLevel.TRACE == TRACE

    def test_trace_registered(self):
        assert logging.getLevelName(TRACE) == "TRACE"

    def test_off_highest(self):
        assert LogLevel.OFF > LogLevel.ERROR


class TestLogConfig:
    def test_defaults(self):
        with patch.dict("os.environ", {}, clear=True):
            config = LogConfig()
            assert config.log == "ERROR"
            assert config.log_path is None
            assert config.log_json is False

    def test_env_var_case_insensitive(self):
        with patch.dict("os.environ", {"IMCDSE_LOG": "info"}):
            assert LogConfig().log == "INFO"

    def test_warning_alias(self):
        with patch.dict("os.environ", {"IMCDSE_LOG": "WARNING"}):
            assert LogConfig().log == "WARN"

    def test_env_var_log_json(self):
        with patch.dict("os.environ", {"IMCDSE_LOG_JSON": "true"}):
            assert LogConfig().log_json is True


class TestFormatters:
    def test_human_format(self):
        output = SearchFormatter().format(_record(level=logging.DEBUG, msg="Phase %s best %.2f", args=("p1", 3.0)))
        assert "[DEBUG]" in output
        assert "Phase p1 best 3.00" in output

    def test_json_format(self):
        data = json.loads(SearchJsonFormatter().format(_record()))
        assert data["@level"] == "INFO"
        assert data["@message"] == "Test message"
        assert "@timestamp" in data
        assert "@module" in data

    def test_json_with_exception(self):
        try:
            raise ValueError("bad space")
        except ValueError:
            exc_info = sys.exc_info()
        data = json.loads(SearchJsonFormatter().format(_record(level=logging.ERROR, exc_info=exc_info)))
        assert "ValueError" in data["@exception"]

    def test_search_context(self):
        record = _record(msg="Best 1.5")
        record.phase = "convergence"
        record.generation = 7
        record.evals = 120
        assert "[convergence g=7] Best 1.5" in SearchFormatter().format(record)
        data = json.loads(SearchJsonFormatter().format(record))
        assert (data["phase"], data["generation"], data["evals"]) == ("convergence", 7, 120)
        assert "strategy" not in data


class TestSetupLogging:
    def test_default_error(self):
        with patch.dict("os.environ", {}, clear=True):
            logger = setup_logging()
            assert logger.level == LogLevel.ERROR
            assert len(logger.handlers) == 1

    def test_cli_overrides_env(self):
        with patch.dict("os.environ", {"IMCDSE_LOG": "ERROR"}):
            assert setup_logging(level="trace").level == TRACE

    def test_off_uses_null_handler(self):
        logger = setup_logging(level="OFF")
        assert isinstance(logger.handlers[0], logging.NullHandler)

    def test_file_uses_json_by_default(self, tmp_path):
        logger = setup_logging(level="DEBUG", log_path=tmp_path / "run.log")
        file_handler = next(h for h in logger.handlers if isinstance(h, logging.FileHandler))
        assert isinstance(file_handler.formatter, SearchJsonFormatter)

    def test_singleton_pattern(self):
        first = setup_logging(level="DEBUG")
        second = setup_logging(level="ERROR")
        assert first is second
        assert first.level == logging.DEBUG

    def test_get_logger_name(self):
        with patch.dict("os.environ", {}, clear=True):
            assert get_logger().name == "imcdse"


_CLI_ENV = {"NO_COLOR": "1", "TERM": "dumb"}


class TestCliIntegration:
    runner = CliRunner()

    def test_logging_options_in_help(self):
        result = self.runner.invoke(app, ["--help"], env=_CLI_ENV)
        assert result.exit_code == 0
        for option in ("--log-level", "--log-path", "--log-json"):
            assert option in result.output

    def test_cli_with_log_level(self):
        result = self.runner.invoke(app, ["--log-level", "DEBUG"], env=_CLI_ENV)
        assert result.exit_code == 0

    def test_log_file_written_by_command(self, tmp_path):
        log_file = tmp_path / "imcdse.log"
        result = self.runner.invoke(
            app,
            [
                "--log-level",
                "DEBUG",
                "--log-path",
                str(log_file),
                "workloads",
                "export",
                "vgg16",
                "--out",
                str(tmp_path),
            ],
            env=_CLI_ENV,
        )
        assert result.exit_code == 0, result.output
        assert log_file.exists()
