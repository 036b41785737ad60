import json
import logging
import math
import os
from collections import namedtuple
from dataclasses import dataclass
from dataclasses import field

from lottery.errors import ConfigError
from lottery.errors import DomainError

# Helper: absolute path to this directory (which is not the current directory)
MODULE_DIR = os.path.dirname(__file__)

# Bundled lottery configs live in the repository's `config/lotteries/` directory
DEFAULT_LOTTERY_DIR = os.path.join(os.path.dirname(MODULE_DIR), "config", "lotteries")

# Takes precedence over any configured lottery directory
LOTTERY_DIR_ENV = "LOTTO_EDGE_CONFIG_DIR"

# A lottery is "major" when it has at least this many distinct tickets
MAJOR_LOTTERY_TICKETS = 500

DEFAULT_TAX_RATE = 0.25
DEFAULT_TAX_THRESHOLD = 5000

# One prize tier as seen by a single ticket: `kind` is "fixed", "pari" or "jackpot",
# `index` its position in the config list, `probability` = ways / t
Tier = namedtuple("Tier", ["kind", "index", "probability"])


@dataclass(frozen=True)
class FixedPrize:
    """A prize of constant value, already net of tax, won by `ways` distinct tickets"""

    payout_after_tax: float
    ways: int

    def __post_init__(self):
        if not self.payout_after_tax > 0:
            raise ConfigError(f"fixed prize payout must be positive (was: {self.payout_after_tax})")
        _check_ways(self.ways, "fixed prize")


@dataclass(frozen=True)
class PariMutuelPool:
    """A pot of `rate * N` (net of tax) split among the winners of `ways` distinct tickets"""

    rate: float
    ways: int

    def __post_init__(self):
        if not 0 < self.rate < 1:
            raise ConfigError(f"pari-mutuel rate must be in (0, 1) (was: {self.rate})")
        _check_ways(self.ways, "pari-mutuel pool")


@dataclass(frozen=True)
class LotteryConfig:
    """The static rules of one lottery.
    `t` is the number of distinct possible tickets; exactly one of them wins the jackpot.
    Amounts are in units of the price of a ticket.
    """

    name: str
    t: int
    fixed: tuple = field(default_factory=tuple)
    pari: tuple = field(default_factory=tuple)

    def __post_init__(self):
        # freeze whatever sequence was given
        object.__setattr__(self, "fixed", tuple(self.fixed))
        object.__setattr__(self, "pari", tuple(self.pari))

        if isinstance(self.t, bool) or not isinstance(self.t, int) or self.t < 1:
            raise ConfigError(f"lottery '{self.name}': t must be a positive integer (was: {self.t})")

        winning = sum(p.ways for p in self.fixed) + sum(p.ways for p in self.pari) + 1
        if winning > self.t:
            raise ConfigError(f"lottery '{self.name}': {winning} winning tickets declared but only t={self.t} exist")

        if not self.major:
            logging.warning(
                f"lottery '{self.name}' has only {self.t} distinct tickets: "
                f"it is not a major lottery (t >= {MAJOR_LOTTERY_TICKETS})"
            )

    @property
    def major(self):
        return self.t >= MAJOR_LOTTERY_TICKETS

    @property
    def jackpot_probability(self):
        return 1.0 / self.t

    @property
    def tiers(self):
        """Every way a single ticket can win, with its probability.
        The remaining probability mass (1 - sum) is a losing ticket.
        """
        tiers = [Tier("jackpot", 0, self.jackpot_probability)]
        tiers += [Tier("pari", i, pool.ways / self.t) for i, pool in enumerate(self.pari)]
        tiers += [Tier("fixed", i, prize.ways / self.t) for i, prize in enumerate(self.fixed)]
        return tiers


@dataclass(frozen=True)
class LotteryStats:
    """Per-lottery constants: f (cost less expected fixed winnings), F (f less the pari-mutuel
    rates) and j0 = F * t, the jackpot cutoff. `t` is kept to check the major-lottery hypothesis.
    """

    f: float
    F: float
    j0: float
    t: int


@dataclass(frozen=True)
class DrawingParams:
    """One drawing: total ticket sales N and after-tax lump-sum jackpot J (ticket-price units).
    N may be non-integral.
    """

    N: float
    J: float

    def __post_init__(self):
        if not (math.isfinite(self.N) and self.N > 0):
            raise DomainError(f"ticket sales N must be positive (was: {self.N})")
        if not (math.isfinite(self.J) and self.J > 0):
            raise DomainError(f"jackpot J must be positive (was: {self.J})")


def _check_ways(ways, what):
    if isinstance(ways, bool) or not isinstance(ways, int) or ways < 1:
        raise ConfigError(f"{what}: ways must be a positive integer (was: {ways})")


def derive_stats(config):
    """Returns the LotteryStats of `config`:
    f  = 1 - sum(a_i * ways_i) / t
    F  = f - sum(r_i)
    j0 = F * t
    A config whose fixed or pari-mutuel prizes eat the whole ticket price is malformed.
    """
    f = 1.0 - math.fsum(prize.payout_after_tax * prize.ways for prize in config.fixed) / config.t
    F = f - math.fsum(pool.rate for pool in config.pari)

    if f <= 0:
        raise ConfigError(f"lottery '{config.name}': fixed prizes pay out the whole ticket price (f={f})")
    if F <= 0:
        raise ConfigError(f"lottery '{config.name}': prizes other than the jackpot pay out everything (F={F})")

    stats = LotteryStats(f=f, F=F, j0=F * config.t, t=config.t)
    logging.debug(f"lottery '{config.name}': {stats}")
    return stats


def apply_withholding(pre_tax_payout, tax_rate=DEFAULT_TAX_RATE, threshold=DEFAULT_TAX_THRESHOLD):
    """Deducts tax withheld at `tax_rate` from payouts strictly above `threshold`"""
    if not 0 <= tax_rate < 1:
        raise DomainError(f"tax rate must be in [0, 1) (was: {tax_rate})")
    if threshold < 0:
        raise DomainError(f"withholding threshold must be non-negative (was: {threshold})")

    if pre_tax_payout > threshold:
        return pre_tax_payout * (1 - tax_rate)
    return pre_tax_payout


###############################################################
# CONFIG FILES                                                #
###############################################################


def lottery_dir(configured=None):
    """Directory searched for lottery configs, in order of precedence:
    1) the LOTTO_EDGE_CONFIG_DIR environment variable
    2) `configured` (typically `config.lotteryDir` from the settings)
    3) the bundled `config/lotteries/`
    """
    return os.environ.get(LOTTERY_DIR_ENV) or configured or DEFAULT_LOTTERY_DIR


def list_bundled_lotteries(directory=None):
    """Names of the lottery configs found in `directory` (see lottery_dir())"""
    directory = lottery_dir(directory)
    try:
        names = [f[: -len(".json")] for f in os.listdir(directory) if f.endswith(".json")]
    except FileNotFoundError as exc:
        raise ConfigError(f"lottery config directory '{directory}' does not exist") from exc
    return sorted(names)


def resolve_lottery_path(name_or_path, directory=None):
    """A name is first tried as a path to a JSON file, then as `<lottery dir>/<name>.json`"""
    if os.path.isfile(name_or_path):
        return name_or_path
    candidate = os.path.join(lottery_dir(directory), f"{name_or_path}.json")
    if os.path.isfile(candidate):
        return candidate
    raise ConfigError(f"no lottery config named '{name_or_path}' (looked into '{lottery_dir(directory)}')")


def load_lottery_config(
    name_or_path, directory=None, tax_rate=DEFAULT_TAX_RATE, threshold=DEFAULT_TAX_THRESHOLD
):
    """Loads a lottery config file (JSON), see config_from_dict() for the format"""
    path = resolve_lottery_path(name_or_path, directory)
    logging.debug(f"Loading lottery config from '{path}'")
    try:
        with open(path, mode="r", encoding="utf-8") as file:
            data = json.load(file)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON error in lottery config '{path}': {exc}") from exc

    return config_from_dict(data, tax_rate=tax_rate, threshold=threshold)


def config_from_dict(data, tax_rate=DEFAULT_TAX_RATE, threshold=DEFAULT_TAX_THRESHOLD):
    """Builds a LotteryConfig from its JSON form:
    {
      "name": "mega-millions",
      "t": 175711536,
      "fixed": [{"payout": 150, "ways": 11475}, {"payout_pre_tax": 250000, "ways": 45}, ...],
      "pari": [{"rate": 0.033, "ways": 16920}, {"rate_pre_tax": 0.0223, "ways": 288}, ...]
    }
    `payout_pre_tax` goes through apply_withholding(); `rate_pre_tax` is taxed at a flat `tax_rate`.
    `description` is informational; `ticket_price`, if present, must be 1.
    """
    if not isinstance(data, dict):
        raise ConfigError(f"lottery config must be a JSON object (was: {type(data).__name__})")

    try:
        name = data["name"]
        t = data["t"]
    except KeyError as exc:
        raise ConfigError(f"lottery config is missing mandatory key {exc}") from exc

    if data.get("ticket_price", 1) != 1:
        raise ConfigError(f"lottery '{name}': amounts must be expressed in ticket-price units (ticket_price: 1)")

    fixed = []
    for entry in data.get("fixed", []):
        if "payout" in entry:
            payout = entry["payout"]
        elif "payout_pre_tax" in entry:
            payout = apply_withholding(entry["payout_pre_tax"], tax_rate, threshold)
        else:
            raise ConfigError(f"lottery '{name}': fixed prize {entry} has neither `payout` nor `payout_pre_tax`")
        fixed.append(FixedPrize(payout_after_tax=payout, ways=entry.get("ways")))

    pari = []
    for entry in data.get("pari", []):
        if "rate" in entry:
            rate = entry["rate"]
        elif "rate_pre_tax" in entry:
            rate = entry["rate_pre_tax"] * (1 - tax_rate)
        else:
            raise ConfigError(f"lottery '{name}': pari-mutuel pool {entry} has neither `rate` nor `rate_pre_tax`")
        pari.append(PariMutuelPool(rate=rate, ways=entry.get("ways")))

    return LotteryConfig(name=name, t=t, fixed=fixed, pari=pari)
