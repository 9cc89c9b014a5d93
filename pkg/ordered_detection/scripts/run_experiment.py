"""
Ordered detection experiment CLI.

Usage:
    python -m ordered_detection.scripts.run_experiment list-scenarios
    python -m ordered_detection.scripts.run_experiment validate configs/fig3.env
    python -m ordered_detection.scripts.run_experiment run configs/fig3.env

Exit codes:
    0  success
    2  configuration error
    3  numeric failure (partial results and manifest are still written)
"""
import argparse
import sys
from typing import List, Optional

from ..config.experiment_config import ExperimentConfig, list_scenario_ids, load_config
from ..config.scenarios import SCENARIOS, scenario_defaults
from ..errors import ConfigError, NumericFailureError
from ..pipeline.experiment_runner import ExperimentRunner
from ..utilities.logger import setup_logging

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERIC_FAILURE = 3


def list_scenarios(scenario_id: Optional[str] = None) -> str:
    """
    Built-in scenarios with their default parameters.

    Raises:
        ConfigError: scenario_id is not a built-in scenario
    """
    ids = list_scenario_ids()
    if scenario_id is not None:
        if scenario_id not in SCENARIOS:
            raise ConfigError(f"unknown scenario '{scenario_id}'; valid ids: {', '.join(ids)}", field='scenario')
        ids = [scenario_id]

    lines = []
    for sid in ids:
        entry = SCENARIOS[sid]
        lines.append(f"{sid}: {entry['title']}")
        lines.append(f"  reproduces: {entry['reproduces']}")
        defaults = scenario_defaults(sid)
        lines.append("  defaults: " + ", ".join(
            f"{key}={value}" for key, value in defaults.items() if key != 'scenario' and value != ''
        ))
    return "\n".join(lines)


def describe_config(config: ExperimentConfig) -> str:
    explicit = set(config.explicit_keys)
    lines = [f"Config OK: scenario {config.scenario}"]
    for key, value in config.resolved().items():
        source = 'config' if key in explicit else 'scenario default'
        lines.append(f"  {key:<12} = {value:<24} ({source})")
    lines.append(f"  outputs under {config.output.parent}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="One-bit distributed detection with modulus-ordered transmissions"
    )
    parser.add_argument(
        '--log-level',
        default=None,
        help='Log level (DEBUG, INFO, WARNING, ERROR; default from LOG_LEVEL)'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    run_parser = commands.add_parser('run', help='Run an experiment config')
    run_parser.add_argument('config', help='Path to a KEY=VALUE config file')

    validate_parser = commands.add_parser('validate', help='Validate a config without running it')
    validate_parser.add_argument('config', help='Path to a KEY=VALUE config file')

    list_parser = commands.add_parser('list-scenarios', help='List built-in scenarios and their defaults')
    list_parser.add_argument('scenario', nargs='?', default=None, help='Show a single scenario')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)
    logger = setup_logging(args.log_level)

    if args.command == 'list-scenarios':
        try:
            print(list_scenarios(args.scenario))
        except ConfigError as e:
            print(f"Config error: {e}", file=sys.stderr)
            return EXIT_CONFIG_ERROR
        return EXIT_OK

    try:
        config = load_config(args.config)
    except ConfigError as e:
        print(f"Config error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    if args.command == 'validate':
        print(describe_config(config))
        return EXIT_OK

    try:
        summary = ExperimentRunner(config).run()
    except ConfigError as e:
        print(f"Config error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except NumericFailureError as e:
        logger.error(f"Run stopped on numeric failure: {e}")
        return EXIT_NUMERIC_FAILURE

    print(f"Finished {summary.scenario}: {summary.rows} rows in {summary.wall_time_s:.1f}s")
    for path in summary.files:
        print(f"  {path}")
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
