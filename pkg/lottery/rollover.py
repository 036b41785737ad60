"""
How likely is a large jackpot to keep rolling over until it becomes a good bet?

Once J >= j0, ticket sales of large lotteries have always exceeded j0, so each drawing rolls
over with probability at most (1 - 1/t)^j0 (about e^-F). A rollover multiplies the jackpot by
at most `growth_ratio` (historically about 1.27).
"""
import logging
import math
from dataclasses import dataclass

from lottery import derive_stats
from lottery.errors import DomainError

DEFAULT_GROWTH_RATIO = 1.27


@dataclass(frozen=True)
class RolloverForecast:
    k: int
    survival_probability_bound: float
    growth_ratio: float


def rollover_survival_bound(config, k, stats=None):
    """Upper bound (1 - 1/t)^(k * j0) on the chance that a jackpot J >= j0 rolls over k more times.
    Assumes ticket sales of at least j0 in every one of those drawings.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise DomainError(f"number of rollovers must be a non-negative integer (was: {k})")
    stats = stats or derive_stats(config)
    return math.exp(k * stats.j0 * math.log1p(-config.jackpot_probability))


def rollovers_to_target(current_ratio, target_ratio, growth_ratio=DEFAULT_GROWTH_RATIO):
    """Smallest k such that current_ratio * growth_ratio^k >= target_ratio"""
    if not current_ratio > 0:
        raise DomainError(f"current ratio must be positive (was: {current_ratio})")
    if not target_ratio > current_ratio:
        raise DomainError(f"target ratio ({target_ratio}) must exceed the current ratio ({current_ratio})")
    if not growth_ratio > 1:
        raise DomainError(f"growth ratio must be greater than 1 (was: {growth_ratio})")

    k = max(1, math.ceil(math.log(target_ratio / current_ratio) / math.log(growth_ratio)))
    # the logarithms may be off by an ulp: settle on the exact smallest k
    while current_ratio * growth_ratio**k < target_ratio:
        k += 1
    while k > 1 and current_ratio * growth_ratio ** (k - 1) >= target_ratio:
        k -= 1
    return k


def forecast(config, current_ratio, target_ratio, growth_ratio=DEFAULT_GROWTH_RATIO, stats=None):
    """Number of rollovers needed to go from J/j0 = current_ratio to target_ratio,
    and the bound on the chance that this many rollovers happen
    """
    k = rollovers_to_target(current_ratio, target_ratio, growth_ratio)
    bound = rollover_survival_bound(config, k, stats)
    logging.debug(f"'{config.name}': {k} rollovers from {current_ratio} to {target_ratio}, chance <= {bound}")
    return RolloverForecast(k=k, survival_probability_bound=bound, growth_ratio=growth_ratio)


def target_frequency(years_between_arrivals, bound):
    """If the jackpot reaches j0 once every `years_between_arrivals` years and goes on to the target
    with probability at most `bound`, the target is reached about once every years / bound years
    """
    if not years_between_arrivals > 0:
        raise DomainError(f"years between arrivals must be positive (was: {years_between_arrivals})")
    if not 0 < bound <= 1:
        raise DomainError(f"probability bound must be in (0, 1] (was: {bound})")
    return years_between_arrivals / bound
