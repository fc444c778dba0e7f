"""Unit tests for the fbgravity CLI application."""

import argparse
import json
from functools import partial
from pathlib import Path
from unittest.mock import patch

import pytest
import tomli_w

from fbgravity.app import (
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_PASS,
    build_parser,
    cmd_init,
    cmd_residuals,
    cmd_version,
    load_run_config,
    main,
)
from fbgravity.shared.config import ConfigError
from fbgravity.verification import FamilyResult, Report, run_identity_suite


def _args(**overrides) -> argparse.Namespace:
    values = {
        "config": None,
        "scenario": None,
        "points": None,
        "seed": None,
        "workers": None,
        "out": None,
        "log_level": None,
        "log_format": None,
    }
    values.update(overrides)
    return argparse.Namespace(**values)


def _config(tmp_path: Path, data: dict) -> str:
    path = tmp_path / "run.toml"
    path.write_text(tomli_w.dumps(data))
    return str(path)


class TestLoadRunConfig:
    """Test load_run_config precedence."""

    def test_file_env_then_flags(self, tmp_path: Path) -> None:
        """Test file, then environment, then flags."""
        config = _config(tmp_path, {"scenario": "flat_lorentzian", "points": 3, "seed": 1})
        run = load_run_config(_args(config=config, seed=9), environ={"FBG_POINTS": "5", "FBG_SEED": "4"})
        assert run.points == 5
        assert run.seed == 9
        assert run.scenario == "flat_lorentzian"

    def test_invalid_flag_value(self, tmp_path: Path) -> None:
        """Test that invalid merged values raise ConfigError."""
        with pytest.raises(ConfigError):
            load_run_config(_args(config=_config(tmp_path, {"points": 3}), workers=0), environ={})

    def test_missing_file(self) -> None:
        """Test that a missing file raises ConfigError."""
        with pytest.raises(ConfigError, match="not found"):
            load_run_config(_args(config="missing.toml"), environ={})


class TestCommands:
    """Test command handlers."""

    def test_version(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test version output."""
        assert cmd_version() == EXIT_PASS
        assert "fbgravity 0.1.0" in capsys.readouterr().out

    def test_init_writes_example(self, tmp_path: Path) -> None:
        """Test init writes the example configuration."""
        target = tmp_path / "fbgravity.toml"
        assert cmd_init(argparse.Namespace(output=str(target), force=False)) == EXIT_PASS
        assert cmd_init(argparse.Namespace(output=str(target), force=False)) == EXIT_FAIL
        assert "[diff]" in target.read_text()

    def test_residuals_failing_report(self, tmp_path: Path) -> None:
        """Test that a failing report maps to exit code 1 and is still written."""
        failing = Report("residuals", {}, {"EL_ab": FamilyResult("EL_ab", 1e-10, 1.0, None, 1)})
        out = tmp_path / "report.json"
        config = _config(tmp_path, {"scenario": "flat_lorentzian", "points": 1})
        with patch("fbgravity.app.run_residuals", return_value=failing) as run_residuals:
            assert cmd_residuals(_args(config=config, out=str(out))) == EXIT_FAIL
        run_residuals.assert_called_once()
        assert json.loads(out.read_text())["verdict"] == "fail"

    def test_residuals_scenario_error(self, tmp_path: Path) -> None:
        """Test that an unknown scenario maps to exit code 2."""
        config = _config(tmp_path, {"points": 1})
        assert cmd_residuals(_args(config=config, scenario="kerr")) == EXIT_CONFIG


class TestMain:
    """Test main dispatch."""

    def test_parser_global_options(self) -> None:
        """Test global logging options before the subcommand."""
        args = build_parser().parse_args(["--log-format", "json", "gauge-check", "--points", "2"])
        assert args.log_format == "json"
        assert args.command == "gauge-check"
        assert args.points == 2

    def test_no_command_shows_version(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that running without a command prints the version."""
        assert main([]) == EXIT_PASS
        assert "fbgravity" in capsys.readouterr().out

    def test_identities_to_file(self, tmp_path: Path) -> None:
        """Test the identities command writing its report to a file."""
        out = tmp_path / "identities.json"
        reduced = partial(run_identity_suite, draws=20, fiber_points=2, lemma_draws=1)
        with patch("fbgravity.app.run_identity_suite", reduced):
            assert main(["--log-level", "ERROR", "identities", "--seed", "1", "--out", str(out)]) == EXIT_PASS
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["kind"] == "identities"
        assert report["config"]["seed"] == 1

    def test_gauge_check_signature_mismatch(self, tmp_path: Path) -> None:
        """Test that gauge-check maps configuration errors to exit code 2."""
        config = _config(tmp_path, {"scenario": "sphere_s4", "signature": "lorentzian"})
        assert main(["--log-level", "ERROR", "gauge-check", "--config", config]) == EXIT_CONFIG
