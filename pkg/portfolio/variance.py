import logging
from dataclasses import dataclass

from lottery.errors import DomainError
from lottery.returns import sum_over_co_winners

# Variances are expressed in %^2 of rate of return
PERCENT_SQUARED = 100**2


@dataclass(frozen=True)
class LotteryVariance:
    """v1: variance of the rate of return of a single ticket (%^2)
    S: number of tickets bought by the syndicate
    v: variance of a share of the syndicate, v1 / S
    """

    v1: float
    S: int
    v: float

    def __post_init__(self):
        _check_syndicate(self.v1, self.S)


def _check_syndicate(v1, S):
    if not v1 > 0:
        raise DomainError(f"single-ticket variance must be positive (was: {v1})")
    if isinstance(S, bool) or not isinstance(S, int) or S < 1:
        raise DomainError(f"syndicate size must be a positive integer (was: {S})")


def lottery_variance(config, drawing):
    """Estimate of the variance v1 (in %^2) of the rate of return of one ticket:

        v1 ~ sum_{w >= 1} 100^2 (J/w - 1)^2 C(N-1, w-1) p^w (1-p)^(N-w),   p = 1/t

    The jackpot dwarfs everything else, so only the jackpot outcomes are kept.
    """
    J = drawing.J
    v1 = PERCENT_SQUARED * sum_over_co_winners(lambda w: (J / w - 1) ** 2, config.jackpot_probability, drawing.N)
    logging.debug(f"'{config.name}': single ticket variance {v1} for N={drawing.N}, J={J}")
    return v1


def syndicate_variance(config, v1, S=1):
    """Variance of a share in a syndicate buying S tickets: v1 / S.
    The approximation needs S to be small compared to the number of distinct tickets.
    """
    _check_syndicate(v1, S)
    if S > config.t / 100:
        logging.warning(
            f"syndicate of {S} tickets is not small compared to the {config.t} distinct tickets: "
            "v = v1 / S is a rough approximation"
        )
    return LotteryVariance(v1=v1, S=S, v=v1 / S)
