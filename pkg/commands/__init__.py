"""
Subcommands of lottoedge.py. Each handler receives the parsed arguments and the settings
(LottoEdgeConfigModel), calls the library and returns the report to print.
Handlers register themselves with @command("<name>").
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import reports
from lottery import DEFAULT_TAX_RATE
from lottery import DEFAULT_TAX_THRESHOLD
from lottery import DrawingParams
from lottery import derive_stats
from lottery import list_bundled_lotteries
from lottery import load_lottery_config
from lottery.breakeven import classify
from lottery.breakeven import curve_points
from lottery.breakeven import normalize
from lottery.errors import ConfigError
from lottery.errors import DomainError
from lottery.returns import expected_ror
from lottery.returns import jackpot_hit_probability
from lottery.returns import unpopular_adjusted_ror
from lottery.rollover import DEFAULT_GROWTH_RATIO
from lottery.rollover import forecast
from lottery.rollover import target_frequency
from oracles.simulation import DEFAULT_CHUNK_SIZE
from oracles.simulation import simulate_drawings
from portfolio import DEFAULT_THETA
from portfolio import DEFAULT_Z2_FLOOR
from portfolio import augmented_portfolio
from portfolio import lintner_portfolio
from portfolio import load_universe
from portfolio import negative_theorem_screen
from portfolio import screen_threshold
from portfolio import z_floor
from portfolio.variance import lottery_variance
from portfolio.variance import syndicate_variance
from reports.drawings import load_drawings

COMMANDS = {}

DEFAULT_QUICK_PICK_FRACTION = 0.7

# `--quick-pick-fraction` given without a value
USE_CONFIGURED_FRACTION = "configured"


def command(name):
    def inner(func):
        COMMANDS[name] = func
        return func

    return inner


def str_to_command(name):
    try:
        return COMMANDS[name]
    except KeyError as exc:
        raise ConfigError(f"unknown command '{name}'") from exc


def run_command(name, args, settings):
    return str_to_command(name)(args, settings)


###############################################################
# SETTINGS HELPERS                                            #
###############################################################


def significant_figures(settings):
    return settings.get_number("report.significantFigures", reports.DEFAULT_SIGNIFICANT_FIGURES, kind=int)


def load_config_for(name, settings):
    return load_lottery_config(
        name,
        directory=settings.get("config.lotteryDir"),
        tax_rate=settings.get_number("tax.rate", DEFAULT_TAX_RATE),
        threshold=settings.get_number("tax.threshold", DEFAULT_TAX_THRESHOLD),
    )


def _option_or_setting(value, settings, path, default, kind=float):
    return value if value is not None else settings.get_number(path, default, kind=kind)


###############################################################
# HANDLERS                                                    #
###############################################################


@command("stats")
def stats_command(args, settings):
    config = load_config_for(args.lottery, settings)
    return reports.render_stats(config, derive_stats(config), significant_figures(settings))


@command("eror")
def eror_command(args, settings):
    config = load_config_for(args.lottery, settings)
    drawing = DrawingParams(N=args.N, J=args.J)
    stats = derive_stats(config)

    adjusted = None
    if args.quick_pick_fraction is not None:
        fraction = args.quick_pick_fraction
        if fraction == USE_CONFIGURED_FRACTION:
            fraction = settings.get_number("returns.quickPickFraction", DEFAULT_QUICK_PICK_FRACTION)
        adjusted = unpopular_adjusted_ror(config, drawing, fraction, stats)

    return reports.render_eror(
        config,
        drawing,
        expected_ror(config, drawing, stats),
        jackpot_hit_probability(config, drawing),
        adjusted,
        significant_figures(settings),
    )


@command("classify")
def classify_command(args, settings):
    config = load_config_for(args.lottery, settings)
    classification = classify(config, DrawingParams(N=args.N, J=args.J), args.method)
    return reports.render_classification(config, classification, args.method, significant_figures(settings))


@command("breakeven")
def breakeven_command(args, settings):
    config = load_config_for(args.lottery, settings)
    return reports.render_curve(curve_points(config, args.x_min, args.x_max, args.n), significant_figures(settings))


@command("rollover")
def rollover_command(args, settings):
    config = load_config_for(args.lottery, settings)
    growth = _option_or_setting(args.growth, settings, "rollover.growthRatio", DEFAULT_GROWTH_RATIO)
    result = forecast(config, args.current_ratio, args.target_ratio, growth)

    frequency = None
    if args.years_between is not None:
        frequency = target_frequency(args.years_between, result.survival_probability_bound)
    return reports.render_rollover(config, result, frequency, significant_figures(settings))


@command("variance")
def variance_command(args, settings):
    config = load_config_for(args.lottery, settings)
    v1 = lottery_variance(config, DrawingParams(N=args.N, J=args.J))
    return reports.render_variance(config, syndicate_variance(config, v1, args.syndicate), significant_figures(settings))


def resolve_z2_floor(value, universe, r_f, theta):
    """A number, or `auto`: the smallest positive Z of the universe's own efficient portfolio"""
    if str(value).strip().lower() != "auto":
        try:
            return float(value)
        except ValueError as exc:
            raise ConfigError(f"z2 floor must be a number or `auto` (was: {value!r})") from exc
    floor = z_floor(lintner_portfolio(universe, r_f, theta))
    logging.warning(f"using the smallest positive weight of this universe, {floor}, as the z2 floor")
    return floor


@command("portfolio")
def portfolio_command(args, settings):
    digits = significant_figures(settings)
    universe = load_universe(args.universe)
    theta = _option_or_setting(args.theta, settings, "portfolio.theta", DEFAULT_THETA)

    if (args.lottery_rl is None) != (args.lottery_v is None):
        raise DomainError("--lottery-rl and --lottery-v go together")

    if args.lottery_rl is None:
        return reports.render_portfolio(lintner_portfolio(universe, args.rf, theta), digits)

    z2_setting = args.z2_floor if args.z2_floor is not None else settings.get("portfolio.z2Floor", DEFAULT_Z2_FLOOR)
    z2_floor = resolve_z2_floor(z2_setting, universe, args.rf, theta)
    negligible = negative_theorem_screen(args.lottery_rl, args.rf, args.lottery_v, theta, z2_floor)
    threshold = screen_threshold(args.lottery_rl, args.rf, theta, z2_floor)

    solution = augmented_portfolio(universe, args.lottery_rl, args.lottery_v, args.rf, theta)
    return reports.render_portfolio(solution, digits) + reports.render_screen(negligible, threshold, z2_floor, digits)


@command("simulate")
def simulate_command(args, settings):
    config = load_config_for(args.lottery, settings)
    result = simulate_drawings(
        config,
        DrawingParams(N=args.N, J=args.J),
        args.trials,
        args.seed,
        chunk_size=settings.get_number("simulation.chunkSize", DEFAULT_CHUNK_SIZE, kind=int),
        workers=_option_or_setting(args.workers, settings, "simulation.workers", 1, kind=int),
    )
    return reports.render_simulation(config, result, significant_figures(settings))


def analyze_drawing(record, config):
    stats = derive_stats(config)
    coords = normalize(stats, record.params)
    return {
        "date": record.date.isoformat(),
        "lottery": record.lottery,
        "N": record.N,
        "J": record.J,
        "x": coords.x,
        "y": coords.y,
        "eror": expected_ror(config, record.params, stats).total,
        "verdict": classify(config, record.params, "exact", stats).verdict.value.upper(),
    }


@command("drawings")
def drawings_command(args, settings):
    records = load_drawings(args.file, tax_rate=settings.get_number("tax.rate", DEFAULT_TAX_RATE))
    configs = {name: load_config_for(name, settings) for name in sorted({r.lottery for r in records})}
    workers = _option_or_setting(args.workers, settings, "simulation.workers", 1, kind=int)
    if workers < 1:
        raise DomainError(f"workers must be positive (was: {workers})")

    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows = list(executor.map(lambda record: analyze_drawing(record, configs[record.lottery]), records))
    return reports.render_drawing_analyses(rows, significant_figures(settings))


@command("lotteries")
def lotteries_command(args, settings):
    return "".join(f"{name}\n" for name in list_bundled_lotteries(settings.get("config.lotteryDir")))
