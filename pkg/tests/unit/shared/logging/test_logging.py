"""Unit tests for logging module."""

import io
import json
import logging
import sys

import pytest

from fbgravity.shared.logging import (
    LogFormat,
    LoggingConfig,
    get_logger,
    setup_logging,
)


class TestLoggingConfig:
    """Test LoggingConfig dataclass."""

    def test_default_config(self) -> None:
        """Test default configuration."""
        config = LoggingConfig()
        assert config.level == "INFO"
        assert config.format == LogFormat.TEXT
        assert config.include_timestamp is True
        assert config.service_name is None
        assert config.logger_name == "fbgravity"
        assert config.stream == sys.stderr

    def test_format_from_string(self) -> None:
        """Test that string formats are coerced to LogFormat."""
        assert LoggingConfig(format="json").format == LogFormat.JSON

    def test_invalid_level(self) -> None:
        """Test that invalid log level raises ValueError."""
        with pytest.raises(ValueError, match="Invalid log level"):
            LoggingConfig(level="INVALID")


class TestSetupLogging:
    """Test setup_logging function."""

    def test_setup_text_logging(self) -> None:
        """Test text records carry the service name and message."""
        stream = io.StringIO()
        setup_logging(level="INFO", format="text", service_name="fbgravity", logger_name="fbg-text", stream=stream)
        logging.getLogger("fbg-text").info("sweep started")
        output = stream.getvalue()
        assert "[fbgravity]" in output
        assert "sweep started" in output

    def test_setup_json_logging(self) -> None:
        """Test JSON records with extra fields."""
        stream = io.StringIO()
        setup_logging(
            level="DEBUG",
            format=LogFormat.JSON,
            include_timestamp=False,
            logger_name="fbg-json",
            stream=stream,
            extra_fields={"run": "test"},
        )
        logging.getLogger("fbg-json").debug("point evaluated", extra={"family": "EL_ab"})
        record = json.loads(stream.getvalue().strip())
        assert record["message"] == "point evaluated"
        assert record["level"] == "DEBUG"
        assert record["run"] == "test"
        assert record["family"] == "EL_ab"
        assert "timestamp" not in record

    def test_level_filters_records(self) -> None:
        """Test that records below the level are dropped."""
        stream = io.StringIO()
        setup_logging(level="WARNING", logger_name="fbg-level", stream=stream)
        logger = logging.getLogger("fbg-level")
        logger.info("hidden")
        logger.warning("shown")
        assert "hidden" not in stream.getvalue()
        assert "shown" in stream.getvalue()

    def test_reconfigure_replaces_handler(self) -> None:
        """Test that a second setup replaces the first handler."""
        setup_logging(logger_name="fbg-twice", stream=io.StringIO())
        setup_logging(logger_name="fbg-twice", stream=io.StringIO())
        assert len(logging.getLogger("fbg-twice").handlers) == 1


def test_get_logger_is_namespaced() -> None:
    """Test that module loggers live under the package root."""
    assert get_logger("fbgravity.bundle").name == "fbgravity.bundle"
    assert get_logger("verification").name.startswith("fbgravity")
