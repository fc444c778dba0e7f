"""Main application entry point for fbgravity."""

import argparse
import os
from pathlib import Path
import sys
from typing import Any

from fbgravity import __version__
from fbgravity.exceptions import ScenarioError
from fbgravity.scenarios.registry import get_scenario_registry
from fbgravity.shared.config import (
    DEFAULT_CONFIG_PATH,
    ConfigError,
    RunConfig,
    apply_env_overrides,
    get_example_config,
    load_config,
    validate_config,
)
from fbgravity.shared.logging import get_logger, setup_logging
from fbgravity.shared.observability import get_global_metrics_collector
from fbgravity.verification import Report, run_gauge_suite, run_identity_suite, run_residuals

logger = get_logger(__name__)

TAGLINE = "Numerical verification of the frame-bundle formulation of Einstein-Cartan gravity"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def cmd_version() -> int:
    """Handle 'version' command.

    Returns:
        Exit code (0 for success).
    """
    print(f"fbgravity {__version__}")
    print(TAGLINE)
    return EXIT_PASS


def cmd_init(args: argparse.Namespace) -> int:
    """Handle 'init' command.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0 for success, 1 for error).
    """
    config_path = Path(args.output or DEFAULT_CONFIG_PATH)

    if config_path.exists() and not args.force:
        logger.error(f"Configuration file already exists: {config_path}")
        logger.error("Use --force to overwrite")
        return EXIT_FAIL

    try:
        config_path.write_text(get_example_config(), encoding="utf-8")
        logger.info(f"Created example configuration: {config_path}")
        return EXIT_PASS
    except OSError as e:
        logger.error(f"Failed to create configuration file: {e}")
        return EXIT_FAIL


def cmd_scenarios() -> int:
    """Handle 'scenarios' command: list registered scenarios with their parameters."""
    for spec in get_scenario_registry().list_scenarios():
        params = ", ".join(f"{name}={value:g}" for name, value in spec.parameters.items()) or "-"
        partials = "analytic" if spec.analytic else "finite-difference"
        print(f"{spec.name:<20} {spec.signature.value:<11} params: {params:<12} partials: {partials:<17} {spec.description}")
    return EXIT_PASS


def cmd_identities(args: argparse.Namespace) -> int:
    """Handle 'identities' command.

    Returns:
        Exit code (0 when every identity family passes, 1 otherwise).
    """
    report = run_identity_suite(seed=args.seed, metrics=get_global_metrics_collector())
    return _emit(report, args.out)


def load_run_config(args: argparse.Namespace, environ: dict[str, str] | None = None) -> RunConfig:
    """Build the run configuration: file, then FBG_ environment overrides, then flags.

    Raises:
        ConfigError: If the file cannot be read or the merged configuration is invalid.
    """
    config_path = args.config or DEFAULT_CONFIG_PATH
    config: dict[str, Any] = load_config(config_path)
    config = apply_env_overrides(config, os.environ if environ is None else environ)
    for key in ("scenario", "points", "seed", "workers"):
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    return validate_config(config)


def cmd_residuals(args: argparse.Namespace) -> int:
    """Handle 'residuals' command.

    Returns:
        Exit code (0 for pass, 1 for residual failure, 2 for configuration error).
    """
    try:
        run = load_run_config(args)
        _configure_logging(args, run)
        report = run_residuals(run, metrics=get_global_metrics_collector())
    except (ConfigError, ScenarioError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    return _emit(report, args.out or run.output)


def cmd_gauge_check(args: argparse.Namespace) -> int:
    """Handle 'gauge-check' command.

    Returns:
        Exit code (0 for pass, 1 for residual failure, 2 for configuration error).
    """
    try:
        run = load_run_config(args)
        _configure_logging(args, run)
        report = run_gauge_suite(run, metrics=get_global_metrics_collector())
    except (ConfigError, ScenarioError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    return _emit(report, args.out or run.output)


def _configure_logging(args: argparse.Namespace, run: RunConfig) -> None:
    # command-line flags win over the [logging] table
    setup_logging(
        level=args.log_level or run.logging.level,
        format=args.log_format or run.logging.format,
        service_name="fbgravity",
    )


def _emit(report: Report, out: str | None) -> int:
    try:
        report.write(out)
    except OSError as e:
        logger.error(f"Failed to write report: {e}")
        return EXIT_FAIL
    logger.info(f"Verdict: {report.verdict} ({report.pass_counts['passed']}/{report.pass_counts['total']} families, {report.wall_time:.2f}s)")
    return EXIT_PASS if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description=f"fbgravity - {TAGLINE}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    # Global options
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Set logging level (default: INFO, or the [logging] table)",
    )
    parser.add_argument(
        "--log-format",
        choices=["text", "json"],
        default=None,
        help="Set log format (default: text, or the [logging] table)",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"fbgravity {__version__}",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    subparsers.add_parser("version", help="Show version and tagline")

    init_parser = subparsers.add_parser("init", help="Create example configuration")
    init_parser.add_argument("--output", type=str, default=None, help=f"Target path (default: {DEFAULT_CONFIG_PATH})")
    init_parser.add_argument("--force", action="store_true", help="Overwrite existing configuration file")

    subparsers.add_parser("scenarios", help="List registered scenarios")

    identities_parser = subparsers.add_parser("identities", help="Run the algebra and forms identity suites")
    identities_parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    identities_parser.add_argument("--out", type=str, default=None, help="Report path (default: stdout)")

    for name, help_text in (("residuals", "Evaluate every residual family over sampled points"), ("gauge-check", "Run the gauge suite")):
        sweep_parser = subparsers.add_parser(name, help=help_text)
        sweep_parser.add_argument("--config", type=str, default=None, help=f"Configuration file (default: {DEFAULT_CONFIG_PATH})")
        sweep_parser.add_argument("--scenario", type=str, default=None, help="Scenario string, e.g. schwarzschild:M=1.0")
        sweep_parser.add_argument("--points", type=int, default=None, help="Number of sampled points")
        sweep_parser.add_argument("--seed", type=int, default=None, help="Sampling seed")
        sweep_parser.add_argument("--workers", type=int, default=None, help="Worker threads")
        sweep_parser.add_argument("--out", type=str, default=None, help="Report path (default: stdout)")

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the fbgravity CLI.

    Returns:
        Exit code (0 for pass, 1 for residual failure, 2 for configuration error).
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    # Set up logging (must be done before any logger calls)
    setup_logging(level=args.log_level or "INFO", format=args.log_format or "text", service_name="fbgravity")

    if args.command == "version" or args.command is None:
        return cmd_version()
    elif args.command == "init":
        return cmd_init(args)
    elif args.command == "scenarios":
        return cmd_scenarios()
    elif args.command == "identities":
        return cmd_identities(args)
    elif args.command == "residuals":
        return cmd_residuals(args)
    elif args.command == "gauge-check":
        return cmd_gauge_check(args)
    else:
        parser.print_help()
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
