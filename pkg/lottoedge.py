#!/usr/bin/env python3
import argparse
import logging
import os
import sys

import yaml
from dotenv import load_dotenv

from commands import USE_CONFIGURED_FRACTION
from commands import run_command
from configmodel import LottoEdgeConfigModel
from lottery.errors import ConfigError
from lottery.errors import LottoEdgeError
from reports.drawings import parse_amount
from utils import configure_logging

DEFAULT_CONFIG_FILE = "./config/config.yaml"
DEFAULTS_FILE = os.path.join(os.path.dirname(__file__), "lottoedge-defaults.yaml")


def load_environment(settings):
    """Load the environment variables based on the setting config.environ.envFile"""
    source = settings.get("config.environ.envFile")
    if source:
        load_dotenv(source)
        logging.debug(f"Loaded dotenv from '{source}'")
    else:
        logging.debug("No environment loaded")


def load_yaml_file(path):
    try:
        with open(path, mode="r", encoding="utf-8") as file:
            return yaml.safe_load(file)
    except yaml.YAMLError as exc:
        raise ConfigError(f"YAML error in config '{path}':\n {str(exc)}") from exc


def load_settings(config_file=None):
    """User settings from `config_file`, completed by lottoedge-defaults.yaml.
    Without an explicit file, ./config/config.yaml is used if it exists.
    """
    if config_file is None:
        user = load_yaml_file(DEFAULT_CONFIG_FILE) if os.path.exists(DEFAULT_CONFIG_FILE) else None
    elif os.path.exists(config_file):
        user = load_yaml_file(config_file)
    else:
        raise ConfigError(f"config file '{config_file}' does not exist")

    settings = LottoEdgeConfigModel(user)
    logging.debug(f"Loading defaults from: {DEFAULTS_FILE}")
    settings.merge(load_yaml_file(DEFAULTS_FILE), preserve=True)
    logging.debug(f"The entire loaded configuration is as follow:\n=====\n{settings}\n=====")

    # Do early: anything below may read the environment
    load_environment(settings)
    return settings


def amount(text):
    """argparse type: `212e6`, `212m`"""
    try:
        return parse_amount(text)
    except LottoEdgeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def fraction_or_configured(text):
    """argparse type: a float, or the `const` of an option given without a value"""
    if text == USE_CONFIGURED_FRACTION:
        return text
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid fraction: '{text}'") from exc


def _add_drawing_arguments(parser):
    parser.add_argument("lottery", help="Name of a bundled lottery, or path to a lottery JSON file")
    parser.add_argument("--N", dest="N", type=amount, required=True, help="Tickets sold (e.g. 212e6 or 212m)")
    parser.add_argument("--J", dest="J", type=amount, required=True, help="After-tax lump-sum jackpot")


def build_parser():
    parser = argparse.ArgumentParser(
        description="Decides whether a lottery ticket is a good bet, and whether it belongs in a portfolio."
    )
    parser.add_argument(
        "--log-level",
        dest="loglevel",
        choices=["debug", "verbose", "info", "warning", "error", "critical"],
        default="warning",
        help="Level of verbosity",
    )
    parser.add_argument(
        "--config",
        dest="config_file",
        default=None,
        help=f"Path to YAML config file (default: {DEFAULT_CONFIG_FILE}, if present)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser("stats", help="f, F and the jackpot cutoff J0 of a lottery")
    sub.add_argument("lottery")

    sub = subparsers.add_parser("eror", help="Expected rate of return of one ticket")
    _add_drawing_arguments(sub)
    sub.add_argument(
        "--quick-pick-fraction",
        dest="quick_pick_fraction",
        nargs="?",
        type=fraction_or_configured,
        const=USE_CONFIGURED_FRACTION,
        default=None,
        help="Also bound the eRoR of unpopular numbers (without a value: returns.quickPickFraction)",
    )

    sub = subparsers.add_parser("classify", help="Good or bad bet?")
    _add_drawing_arguments(sub)
    sub.add_argument("--method", choices=["bounds", "exact", "rects"], default="bounds")

    sub = subparsers.add_parser("breakeven", help="Points of the break-even curve, as CSV")
    sub.add_argument("lottery")
    sub.add_argument("--x-min", dest="x_min", type=float, required=True)
    sub.add_argument("--x-max", dest="x_max", type=float, required=True)
    sub.add_argument("--n", dest="n", type=int, default=50)

    sub = subparsers.add_parser("rollover", help="Rollovers needed to reach a target jackpot, and their chance")
    sub.add_argument("lottery")
    sub.add_argument("--current-ratio", dest="current_ratio", type=float, required=True, help="current J/J0")
    sub.add_argument("--target-ratio", dest="target_ratio", type=float, required=True, help="target J/J0")
    sub.add_argument("--growth", dest="growth", type=float, default=None, help="jackpot growth per rollover")
    sub.add_argument("--years-between", dest="years_between", type=float, default=None)

    sub = subparsers.add_parser("variance", help="Variance of the rate of return of one ticket, or of a share")
    _add_drawing_arguments(sub)
    sub.add_argument("--syndicate", dest="syndicate", type=int, default=1, help="tickets bought by the syndicate")

    sub = subparsers.add_parser("portfolio", help="Efficient portfolio, with or without a lottery drawing")
    sub.add_argument("--universe", required=True, help="JSON fixture, or CSV of weekly returns")
    sub.add_argument("--rf", dest="rf", type=float, required=True, help="risk-free weekly rate, in %%")
    sub.add_argument("--lottery-rl", dest="lottery_rl", type=float, default=None, help="eRoR of the lottery, in %%")
    sub.add_argument("--lottery-v", dest="lottery_v", type=float, default=None, help="its variance, in %%^2")
    sub.add_argument("--theta", dest="theta", type=float, default=None)
    sub.add_argument("--z2-floor", dest="z2_floor", default=None, help="a number, or `auto`")

    sub = subparsers.add_parser("simulate", help="Monte-Carlo drawings")
    _add_drawing_arguments(sub)
    sub.add_argument("--trials", dest="trials", type=int, required=True)
    sub.add_argument("--seed", dest="seed", type=int, required=True)
    sub.add_argument("--workers", dest="workers", type=int, default=None)

    sub = subparsers.add_parser("drawings", help="Analyze every drawing of a CSV file")
    sub.add_argument("file")
    sub.add_argument("--workers", dest="workers", type=int, default=None)

    subparsers.add_parser("lotteries", help="List the bundled lotteries")

    return parser


def cli_dispatch(argv):
    """Runs one command. Returns the exit code:
    0 for success
    1 for a lotto-edge error (domain, config, ...)
    2 for a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code

    configure_logging(args.loglevel)
    logging.debug(f"log level set to debug. Config file: '{args.config_file}'")

    try:
        settings = load_settings(args.config_file)
        report = run_command(args.command, args, settings)
    except LottoEdgeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    sys.stdout.write(report)
    return 0


def run():
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    run()
