"""
Definitional sums over the number of co-winners, with no closed form and no truncation.

For a prize won with probability p per ticket, your ticket wins along with w - 1 of the
other N - 1 tickets with probability C(N-1, w-1) p^w (1-p)^(N-w), w = 1..N.
Only tractable for small lotteries: see check_tractable().
"""
import logging
import math

import numpy as np
from scipy import stats

from lottery import derive_stats
from lottery.errors import DomainError
from lottery.errors import SizeGuardError
from portfolio.variance import PERCENT_SQUARED

MAX_EXHAUSTIVE_SALES = 5000
MAX_EXHAUSTIVE_TICKETS = 10**6


def check_tractable(config, drawing):
    if drawing.N != math.floor(drawing.N):
        raise SizeGuardError(f"exhaustive sums need an integer number of tickets sold (was: N={drawing.N})")
    if drawing.N > MAX_EXHAUSTIVE_SALES:
        raise SizeGuardError(f"N={drawing.N} is too large to sum over (max: {MAX_EXHAUSTIVE_SALES})")
    if config.t > MAX_EXHAUSTIVE_TICKETS:
        raise SizeGuardError(f"t={config.t} is too large to sum over (max: {MAX_EXHAUSTIVE_TICKETS})")


def co_winner_probabilities(p, N):
    """Returns (w, P) with w = 1..N and P[w-1] = P(your ticket wins, shared by w tickets in total)"""
    if not 0 < p < 1:
        raise DomainError(f"probability must be in (0, 1) (was: {p})")
    N = int(N)
    if N < 1:
        raise DomainError(f"number of tickets N must be at least 1 (was: {N})")
    w = np.arange(1, N + 1)
    return w, p * stats.binom.pmf(w - 1, N - 1, p)


def binomial_share(p, N):
    """s(p, N) as the raw sum: sum_w (1/w) C(N-1, w-1) p^w (1-p)^(N-w)"""
    w, prob = co_winner_probabilities(p, N)
    return math.fsum(prob / w)


def exhaustive_eror(config, drawing):
    """eRoR = -f + sum_i r_i N s(p_i, N) + J s(1/t, N), every s being a raw binomial sum"""
    check_tractable(config, drawing)
    N = int(drawing.N)
    lottery_stats = derive_stats(config)

    terms = [-lottery_stats.f]
    terms += [pool.rate * N * binomial_share(pool.ways / config.t, N) for pool in config.pari]
    terms.append(drawing.J * binomial_share(config.jackpot_probability, N))
    return math.fsum(terms)


def exhaustive_variance(config, drawing):
    """Untruncated counterpart of portfolio.variance.lottery_variance() (in %^2)"""
    check_tractable(config, drawing)
    w, prob = co_winner_probabilities(config.jackpot_probability, drawing.N)
    return PERCENT_SQUARED * math.fsum((drawing.J / w - 1) ** 2 * prob)


def exact_ror_variance(config, drawing):
    """Variance of the realized rate of return of one ticket (as a fraction, not in %^2),
    all prize tiers included. The tiers of one ticket are mutually exclusive.
    """
    check_tractable(config, drawing)
    N = int(drawing.N)

    first, second = [], []
    sharing = [(config.jackpot_probability, drawing.J)]
    sharing += [(pool.ways / config.t, pool.rate * N) for pool in config.pari]
    for p, pot in sharing:
        w, prob = co_winner_probabilities(p, N)
        first.append(math.fsum(prob * pot / w))
        second.append(math.fsum(prob * (pot / w) ** 2))
    for prize in config.fixed:
        q = prize.ways / config.t
        first.append(q * prize.payout_after_tax)
        second.append(q * prize.payout_after_tax**2)

    mean_payout = math.fsum(first)
    variance = math.fsum(second) - mean_payout**2
    logging.debug(f"'{config.name}': realized return has mean {mean_payout - 1} and variance {variance}")
    return variance
