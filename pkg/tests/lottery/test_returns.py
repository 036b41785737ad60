import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from lottery import DrawingParams
from lottery import LotteryConfig
from lottery import PariMutuelPool
from lottery import derive_stats
from lottery import load_lottery_config
from lottery.errors import DomainError
from lottery.returns import expected_ror
from lottery.returns import jackpot_cutoff_test
from lottery.returns import jackpot_hit_probability
from lottery.returns import one_minus_power
from lottery.returns import share_factor
from lottery.returns import sum_over_co_winners
from lottery.returns import unpopular_adjusted_ror
from oracles.exhaustive import binomial_share

BUNDLED = ["mega-millions", "powerball", "lotto-texas", "nj-pick6"]


@pytest.fixture(name="texas")
def lotto_texas():
    return load_lottery_config("lotto-texas")


@pytest.fixture(name="toy")
def jackpot_only_toy():
    return LotteryConfig(name="toy", t=1000)


def test_share_factor_examples():
    assert share_factor(0.5, 1) == pytest.approx(0.5, rel=1e-15)
    assert share_factor(0.1, 10) == pytest.approx(0.06513215599, rel=1e-10)

    t = 175711536
    N = 212e6
    assert N * share_factor(1 / t, N) == pytest.approx(0.7007, abs=1e-3)
    assert N * share_factor(1 / t, N) == pytest.approx(-math.expm1(N * math.log1p(-1 / t)), rel=1e-14)


def test_share_factor_domain():
    for p, N in [(0, 10), (1, 10), (-0.1, 10), (0.5, 0), (0.5, -3), (0.5, float("inf"))]:
        with pytest.raises(DomainError):
            share_factor(p, N)


@pytest.mark.parametrize("p", [0.5, 0.1, 0.01, 0.001])
def test_share_factor_matches_binomial_sum(p):
    for N in range(1, 2001):
        assert share_factor(p, N) == pytest.approx(binomial_share(p, N), rel=1e-9)


@pytest.mark.parametrize("p", [0.5, 0.1, 0.01, 0.001])
def test_share_factor_monotone(p):
    grid = np.geomspace(1e-3, 1e4, 200)
    values = [share_factor(p, x) for x in grid]
    scaled = [x * share_factor(p, x) for x in grid if x * -math.log1p(-p) < 30]

    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(a < b for a, b in zip(scaled, scaled[1:]))
    # limits: -ln(1 - p) at 0, 0 at infinity; x s(p, x) goes from 0 to 1
    assert share_factor(p, 1e-9) == pytest.approx(-math.log1p(-p), rel=1e-6)
    assert share_factor(p, 1e9) < 1e-8
    assert 1e9 * share_factor(p, 1e9) == pytest.approx(1.0)


def test_one_minus_power_is_stable():
    # p * N is what matters when p is tiny
    assert one_minus_power(1e-12, 1.0) == pytest.approx(1e-12, rel=1e-9)
    assert one_minus_power(5.7e-9, 2e8) == pytest.approx(-math.expm1(-5.7e-9 * 2e8), rel=1e-6)


@pytest.mark.parametrize(
    "name, N, J, expected",
    [
        ("lotto-texas", 4.2e6, 33.8e6, 0.30),
        ("mega-millions", 212e6, 175e6, -0.26),
        ("powerball", 157e6, 133e6, -0.26),
        ("powerball", 161e6, 123.3e6, -0.31),
    ],
)
def test_expected_ror_historical_drawings(name, N, J, expected):
    breakdown = expected_ror(load_lottery_config(name), DrawingParams(N=N, J=J))
    assert breakdown.total == pytest.approx(expected, abs=0.02)


def test_expected_ror_breakdown(texas):
    stats = derive_stats(texas)
    breakdown = expected_ror(texas, DrawingParams(N=4.2e6, J=33.8e6))

    assert breakdown.cost_and_fixed == -stats.f
    assert len(breakdown.pari_terms) == 2
    for term, pool in zip(breakdown.pari_terms, texas.pari):
        assert 0 <= term <= pool.rate
    assert 0 < breakdown.jackpot_term <= 33.8e6 / texas.t
    assert breakdown.total == pytest.approx(
        breakdown.cost_and_fixed + sum(breakdown.pari_terms) + breakdown.jackpot_term, abs=1e-15
    )


def test_expected_ror_single_ticket(toy):
    breakdown = expected_ror(toy, DrawingParams(N=1, J=1e-6))
    assert breakdown.total == pytest.approx(-1 + 1e-6 / 1000, rel=1e-12)


@pytest.mark.parametrize("name", BUNDLED)
def test_expected_ror_affine_in_j(name):
    config = load_lottery_config(name)
    stats = derive_stats(config)
    N = 2 * stats.j0
    totals = [expected_ror(config, DrawingParams(N=N, J=J), stats).total for J in (1e6, 2e6, 3e6, 4e6)]

    assert all(a < b for a, b in zip(totals, totals[1:]))
    steps = np.diff(totals)
    assert steps == pytest.approx([steps[0]] * 3, rel=1e-9)


@settings(deadline=None)
@given(
    name=st.sampled_from(BUNDLED),
    x=st.floats(min_value=0.01, max_value=3),
    y=st.floats(min_value=0.2, max_value=3),
)
def test_expected_ror_upper_bound(name, x, y):
    config = load_lottery_config(name)
    stats = derive_stats(config)
    J = y * stats.j0
    N = x * J
    total = expected_ror(config, DrawingParams(N=N, J=J), stats).total

    chain = -stats.F + J * share_factor(1 / config.t, N)
    assert total <= chain + 1e-12
    assert chain <= -stats.F + J / config.t + 1e-12


def test_jackpot_cutoff_test(texas):
    mega = load_lottery_config("mega-millions")
    assert jackpot_cutoff_test(derive_stats(mega), DrawingParams(N=1e8, J=100e6))

    stats = derive_stats(texas)
    assert not jackpot_cutoff_test(stats, DrawingParams(N=4.2e6, J=33.8e6))
    assert not jackpot_cutoff_test(stats, DrawingParams(N=4.2e6, J=stats.j0))


def test_jackpot_hit_probability(toy):
    assert jackpot_hit_probability(toy, DrawingParams(N=1, J=1)) == pytest.approx(1e-3)
    assert jackpot_hit_probability(toy, DrawingParams(N=1000, J=1)) == pytest.approx(1 - 0.999**1000)


def test_unpopular_adjusted_ror(texas, toy):
    drawing = DrawingParams(N=4.2e6, J=33.8e6)
    assert unpopular_adjusted_ror(texas, drawing, 1.0) == expected_ror(texas, drawing)

    adjusted = unpopular_adjusted_ror(texas, drawing, 0.7)
    assert adjusted.total > expected_ror(texas, drawing).total
    assert adjusted.total == pytest.approx(expected_ror(texas, DrawingParams(N=2.94e6, J=33.8e6)).total, rel=1e-12)
    assert adjusted.cost_and_fixed == -derive_stats(texas).f

    drawing = DrawingParams(N=1000, J=1500)
    assert unpopular_adjusted_ror(toy, drawing, 0.7).total > expected_ror(toy, drawing).total

    for fraction in (0, -0.5, 1.5):
        with pytest.raises(DomainError):
            unpopular_adjusted_ror(toy, drawing, fraction)


def test_unpopular_adjusted_ror_pari_terms():
    config = LotteryConfig(name="pari", t=10**5, pari=[PariMutuelPool(0.1, 1)])
    drawing = DrawingParams(N=10**5, J=10**5)
    plain = expected_ror(config, drawing)
    adjusted = unpopular_adjusted_ror(config, drawing, 0.5)

    assert adjusted.pari_terms[0] < plain.pari_terms[0]
    assert adjusted.jackpot_term > plain.jackpot_term


def test_sum_over_co_winners_is_share():
    # weight 1/w gives back s(p, N)
    for p, N in [(0.01, 50), (0.1, 10), (1e-3, 3000)]:
        assert sum_over_co_winners(lambda w: 1 / w, p, N) == pytest.approx(share_factor(p, N), rel=1e-10)
    # weight 1 gives the chance of winning, p
    assert sum_over_co_winners(lambda w: 1.0, 0.01, 500) == pytest.approx(0.01, rel=1e-10)


def test_power_lemma():
    for c in np.linspace(1e-4, 1 - 1e-4, 10001):
        assert 1 - 1 / c - math.log(c) < 0


def test_one_over_e_lemma():
    ts = np.unique(np.geomspace(2, 1e9, 2000).astype(np.int64))
    values = [math.exp(t * math.log1p(-1 / t)) for t in ts]

    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(v < 1 / math.e for v in values)
    assert all(v > 0.36 for t, v in zip(ts, values) if t >= 500)
