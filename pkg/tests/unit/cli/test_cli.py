"""Unit tests for CLI entry point."""

import json
import os
from pathlib import Path
import subprocess
import sys
import tempfile

import tomli_w

PROJECT_ROOT = Path(__file__).parent.parent.parent.parent

# Default timeout for all subprocess calls (in seconds)
SUBPROCESS_TIMEOUT = 60


def run_cli(*args: str) -> subprocess.CompletedProcess:
    env = {**os.environ, "PYTHONPATH": str(PROJECT_ROOT / "src")}
    return subprocess.run(
        [sys.executable, "-m", "fbgravity.app", *args],
        capture_output=True,
        text=True,
        timeout=SUBPROCESS_TIMEOUT,
        cwd=PROJECT_ROOT,
        env=env,
    )


def test_cli_version_flag() -> None:
    """Test that --version flag works and returns exit code 0."""
    result = run_cli("--version")
    assert result.returncode == 0
    assert "fbgravity 0.1.0" in result.stdout


def test_cli_version_command() -> None:
    """Test that 'version' command prints version and tagline."""
    result = run_cli("version")
    assert result.returncode == 0
    assert "fbgravity 0.1.0" in result.stdout
    assert "Einstein-Cartan" in result.stdout


def test_cli_default_run_shows_version() -> None:
    """Test that CLI runs without arguments and shows version."""
    result = run_cli()
    assert result.returncode == 0
    assert "fbgravity" in result.stdout


def test_cli_help_flag() -> None:
    """Test that --help lists the subcommands."""
    result = run_cli("--help")
    assert result.returncode == 0
    for command in ("identities", "residuals", "gauge-check", "scenarios", "init"):
        assert command in result.stdout


def test_cli_scenarios() -> None:
    """Test that 'scenarios' lists the catalog with signatures."""
    result = run_cli("scenarios")
    assert result.returncode == 0
    assert "schwarzschild" in result.stdout
    assert "sphere_s4" in result.stdout
    assert "euclidean" in result.stdout


def test_cli_init_creates_config() -> None:
    """Test that 'init' command creates example configuration."""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = Path(tmpdir) / "fbgravity.toml"
        result = run_cli("init", "--output", str(config_path))
        assert result.returncode == 0
        assert config_path.exists()
        assert "schwarzschild" in config_path.read_text()


def test_cli_init_refuses_overwrite() -> None:
    """Test that 'init' command refuses to overwrite existing config without --force."""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = Path(tmpdir) / "fbgravity.toml"
        config_path.write_text("points = 1")
        result = run_cli("init", "--output", str(config_path))
        assert result.returncode == 1
        assert "already exists" in result.stderr
        assert config_path.read_text() == "points = 1"


def test_cli_init_force_overwrite() -> None:
    """Test that 'init' command overwrites with --force."""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = Path(tmpdir) / "fbgravity.toml"
        config_path.write_text("points = 1")
        result = run_cli("init", "--output", str(config_path), "--force")
        assert result.returncode == 0
        assert "schwarzschild" in config_path.read_text()


def test_cli_residuals_missing_config() -> None:
    """Test that a missing configuration file exits with code 2."""
    result = run_cli("residuals", "--config", "does-not-exist.toml")
    assert result.returncode == 2
    assert "Configuration error" in result.stderr


def test_cli_residuals_unknown_scenario() -> None:
    """Test that an unknown scenario exits with code 2."""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = Path(tmpdir) / "run.toml"
        config_path.write_text(tomli_w.dumps({"points": 1}))
        result = run_cli("residuals", "--config", str(config_path), "--scenario", "kerr")
        assert result.returncode == 2


def test_cli_residuals_report_on_stdout() -> None:
    """Test a one-point flat sweep writing JSON to stdout."""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = Path(tmpdir) / "run.toml"
        config_path.write_text(tomli_w.dumps({"scenario": "flat_lorentzian", "points": 1}))
        result = run_cli("--log-level", "WARNING", "residuals", "--config", str(config_path))
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["kind"] == "residuals"
        assert report["verdict"] == "pass"

