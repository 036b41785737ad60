"""
Expected rate of return (eRoR) of one ticket in a drawing, other tickets being chosen uniformly at random:

    eRoR = -f + sum_i r_i (1 - (1 - p_i)^N) + J s(1/t, N)

where s(p, N) = (1 - (1 - p)^N) / N is the expected share of a prize won with probability p
when N tickets are sold (yours included).
"""
import logging
import math
from dataclasses import dataclass

from scipy.special import gammaln

from lottery import derive_stats
from lottery.errors import DomainError

# Stop summing over the number of co-winners once a term is this small relative to the total...
TRUNCATION_RELATIVE_TERM = 1e-18
# ...and we are at least this many standard deviations above the binomial mean
TRUNCATION_SIGMAS = 12


@dataclass(frozen=True)
class ERoRBreakdown:
    """Terms of the eRoR. `cost_and_fixed` is -f, one `pari_terms` entry per pari-mutuel pool"""

    cost_and_fixed: float
    pari_terms: tuple
    jackpot_term: float
    total: float


def _check_probability(p):
    if not 0 < p < 1:
        raise DomainError(f"probability must be in (0, 1) (was: {p})")


def _check_sales(N):
    if not (math.isfinite(N) and N > 0):
        raise DomainError(f"number of tickets N must be positive (was: {N})")


def one_minus_power(p, N):
    """1 - (1 - p)^N, evaluated as -expm1(N * log1p(-p)).
    p is about 6e-9 and N about 2e8 for the big lotteries: (1 - p)^N must never be formed directly.
    """
    _check_probability(p)
    _check_sales(N)
    return -math.expm1(N * math.log1p(-p))


def share_factor(p, N):
    """s(p, N) = (1 - (1 - p)^N) / N: the expected fraction of a pot a ticket takes home
    when the pot is won with probability p per ticket and split among N tickets sold.
    N may be any positive real.
    """
    return one_minus_power(p, N) / N


def jackpot_hit_probability(config, drawing):
    """Chance that at least one of the N tickets wins the jackpot (i.e. no rollover)"""
    return one_minus_power(config.jackpot_probability, drawing.N)


def _breakdown(config, stats, sharing_N, J):
    pari_terms = tuple(pool.rate * one_minus_power(pool.ways / config.t, sharing_N) for pool in config.pari)
    jackpot_term = J * share_factor(config.jackpot_probability, sharing_N)
    total = math.fsum((-stats.f, *pari_terms, jackpot_term))
    return ERoRBreakdown(cost_and_fixed=-stats.f, pari_terms=pari_terms, jackpot_term=jackpot_term, total=total)


def expected_ror(config, drawing, stats=None):
    """Returns the ERoRBreakdown of a ticket for `drawing` of the lottery `config`.
    `stats` may be given to avoid deriving them again.
    """
    stats = stats or derive_stats(config)
    breakdown = _breakdown(config, stats, drawing.N, drawing.J)
    logging.debug(f"eRoR of '{config.name}' for N={drawing.N}, J={drawing.J}: {breakdown.total}")
    return breakdown


def jackpot_cutoff_test(stats, drawing):
    """True when the drawing is certainly a bad bet: the jackpot is below the cutoff j0"""
    return drawing.J < stats.j0


def unpopular_adjusted_ror(config, drawing, quick_pick_fraction, stats=None):
    """Upper bound on the eRoR of a ticket with numbers no other player picked by hand.
    Only quick picks (a fraction of N) can then share a prize, so N is replaced by
    quick_pick_fraction * N in every sharing term, pari-mutuel pools included.
    The fixed-prize term does not depend on N and is left untouched.
    """
    if not 0 < quick_pick_fraction <= 1:
        raise DomainError(f"quick pick fraction must be in (0, 1] (was: {quick_pick_fraction})")

    stats = stats or derive_stats(config)
    return _breakdown(config, stats, quick_pick_fraction * drawing.N, drawing.J)


def sum_over_co_winners(weight, p, N):
    """Computes sum_{w >= 1} weight(w) * C(N-1, w-1) p^w (1-p)^(N-w),
    i.e. the expectation of weight(w) over the number w of tickets sharing a prize with yours
    (yours included), restricted to the event that your ticket wins.

    Binomial coefficients go through log-gamma so that N may be real and huge.
    The sum is truncated once w is TRUNCATION_SIGMAS standard deviations above the mean
    of the co-winners and the current term is below TRUNCATION_RELATIVE_TERM times the total.
    """
    _check_probability(p)
    _check_sales(N)

    log_p = math.log(p)
    log_q = math.log1p(-p)
    log_gamma_n = gammaln(N)
    mean = N * p
    cutoff = mean + TRUNCATION_SIGMAS * math.sqrt(N * p * (1 - p))
    last = max(1, math.floor(N))

    terms = []
    total = 0.0
    for w in range(1, last + 1):
        log_prob = log_gamma_n - gammaln(w) - gammaln(N - w + 1) + w * log_p + (N - w) * log_q
        term = weight(w) * math.exp(log_prob)
        terms.append(term)
        total += term
        if w > cutoff and abs(term) < TRUNCATION_RELATIVE_TERM * abs(total):
            logging.debug(f"sum over co-winners truncated after w={w} (mean {mean})")
            break

    return math.fsum(terms)
