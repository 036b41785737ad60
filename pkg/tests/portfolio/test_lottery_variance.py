import logging

import pytest

from lottery import DrawingParams
from lottery import LotteryConfig
from lottery import load_lottery_config
from lottery.errors import DomainError
from oracles.exhaustive import exhaustive_variance
from portfolio.variance import LotteryVariance
from portfolio.variance import lottery_variance
from portfolio.variance import syndicate_variance


def test_lottery_variance_texas():
    v1 = lottery_variance(load_lottery_config("lotto-texas"), DrawingParams(N=4.2e6, J=33.8e6))
    assert 4e11 / 1.25 < v1 < 4e11 * 1.25


@pytest.mark.parametrize("t, N, J", [(100, 50, 200), (1000, 3000, 5000), (2, 2, 2)])
def test_lottery_variance_matches_exhaustive_sum(t, N, J):
    config = LotteryConfig(name="toy", t=t)
    drawing = DrawingParams(N=N, J=J)
    assert lottery_variance(config, drawing) == pytest.approx(exhaustive_variance(config, drawing), rel=1e-9)


def test_lottery_variance_grows_with_jackpot():
    config = load_lottery_config("mega-millions")
    small = lottery_variance(config, DrawingParams(N=212e6, J=100e6))
    large = lottery_variance(config, DrawingParams(N=212e6, J=175e6))
    assert large > small


def test_syndicate_variance(caplog):
    config = load_lottery_config("lotto-texas")
    result = syndicate_variance(config, 4e11, 1000)

    assert result == LotteryVariance(v1=4e11, S=1000, v=4e8)
    assert "rough approximation" not in caplog.text

    with caplog.at_level(logging.WARNING):
        syndicate_variance(config, 4e11, config.t)
    assert "rough approximation" in caplog.text

    with pytest.raises(DomainError):
        syndicate_variance(config, 4e11, 0)
    with pytest.raises(DomainError):
        syndicate_variance(config, 0, 10)
