"""
Command line interface.

    python run.py benchmark --config src/configs/default.yaml --seed 42 --out results max_iters=1000
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from src.experiment.config import ExperimentConfig, config_to_flat_dict, parse_config
from src.experiment.logging_utils import log_versions
from src.experiment.run import SUBCOMMANDS
from src.utilities.config_utils import get_difference_between_dicts, print_config
from src.utilities.utils import ConfigError, ParameterDomainError, get_logger


log = get_logger(__name__)

EXIT_SUCCESS = 0
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Optimal execution: closed form vs. projected SGD variants.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    helps = {
        "simulate": "execute one strategy on one noise path",
        "optimize": "run one SGD variant",
        "benchmark": "optimize all variants and compare every strategy on common noise paths",
        "oracle": "brute-force check of the closed form on a tiny instance",
    }
    for command, help_text in helps.items():
        sub = subparsers.add_parser(command, help=help_text)
        sub.add_argument("--config", type=str, default=None, help="flat YAML config file")
        sub.add_argument("--seed", type=int, default=None, help="master seed (unsigned 64 bit)")
        sub.add_argument("--paths", type=int, default=None, help="number of common noise paths")
        sub.add_argument("--out", type=str, default=None, help="output directory")
        sub.add_argument("--format", dest="fmt", choices=("csv", "json", "both"), default=None)
        sub.add_argument("overrides", nargs="*", help="key=value config overrides, e.g. adam.learning_rate=0.01")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = parse_config(
            config_path=args.config,
            overrides=args.overrides,
            seed=args.seed,
            paths=args.paths,
            out=args.out,
            fmt=args.fmt,
        )
    except (ConfigError, ParameterDomainError) as e:
        print(f"Config error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    try:
        config.logging.configure_logging(config.output_dir, f"{args.command}_out.log")
        log_versions()
        overridden = get_difference_between_dicts(config_to_flat_dict(ExperimentConfig()), config_to_flat_dict(config))
        log.info(f"Non-default config values: {overridden}")
        if config.print_config:
            print_config(config, fields="all")
        return SUBCOMMANDS[args.command](config)
    except Exception as e:
        log.exception(f"{args.command} failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
