import json
import logging
import os

import pytest

import reports
from commands import COMMANDS
from commands import resolve_z2_floor
from commands import run_command
from commands import str_to_command
from configmodel import LottoEdgeConfigModel
from lottery import DrawingParams
from lottery import derive_stats
from lottery import load_lottery_config
from lottery.errors import ConfigError
from lottery.errors import DomainError
from lottery.returns import expected_ror
from lottery.returns import unpopular_adjusted_ror
from lottoedge import build_parser
from oracles.simulation import simulate_drawings
from portfolio import load_universe

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "config")
UNIVERSE_FILE = os.path.join(CONFIG_DIR, "universes", "typical-risky-investments.json")
DRAWINGS_FILE = os.path.join(CONFIG_DIR, "drawings-example.csv")


@pytest.fixture(name="settings")
def empty_settings(monkeypatch):
    monkeypatch.delenv("LOTTO_EDGE_CONFIG_DIR", raising=False)
    return LottoEdgeConfigModel()


def run(argv, settings):
    args = build_parser().parse_args(argv)
    return run_command(args.command, args, settings)


def fields(text):
    return dict(tuple(part.strip() for part in line.split(" : ", 1)) for line in text.splitlines() if " : " in line)


def test_command_registry():
    assert set(COMMANDS) == {
        "stats",
        "eror",
        "classify",
        "breakeven",
        "rollover",
        "variance",
        "portfolio",
        "simulate",
        "drawings",
        "lotteries",
    }
    with pytest.raises(ConfigError):
        str_to_command("horoscope")


def test_stats_command(settings):
    stats = derive_stats(load_lottery_config("mega-millions"))
    result = fields(run(["stats", "mega-millions"], settings))

    assert result["f"] == reports.fmt(stats.f)
    assert result["J0"] == reports.fmt(stats.j0)


def test_eror_command(settings):
    config = load_lottery_config("lotto-texas")
    drawing = DrawingParams(N=4.2e6, J=33.8e6)
    result = fields(run(["eror", "lotto-texas", "--N", "4.2m", "--J", "33.8e6"], settings))

    assert result["eRoR"] == reports.fmt_percent(expected_ror(config, drawing).total)
    assert "eRoR, unpopular numbers" not in result

    settings.set("returns.quickPickFraction", 0.5)
    result = fields(run(["eror", "lotto-texas", "--N", "4.2m", "--J", "33.8m", "--quick-pick-fraction"], settings))
    assert result["eRoR, unpopular numbers"] == reports.fmt_percent(
        unpopular_adjusted_ror(config, drawing, 0.5).total
    )

    result = fields(
        run(["eror", "lotto-texas", "--N", "4.2m", "--J", "33.8m", "--quick-pick-fraction", "0.7"], settings)
    )
    assert result["eRoR, unpopular numbers"] == reports.fmt_percent(
        unpopular_adjusted_ror(config, drawing, 0.7).total
    )


def test_classify_command(settings):
    result = fields(run(["classify", "powerball", "--N", "161e6", "--J", "123.3e6", "--method", "rects"], settings))
    assert (result["verdict"], result["rule"]) == ("NEGATIVE", "LARGE_SALES_RECT")

    result = fields(run(["classify", "lotto-texas", "--N", "4.2m", "--J", "33.8m"], settings))
    assert (result["method"], result["verdict"], result["rule"]) == ("bounds", "POSITIVE", "ABOVE_U")


def test_breakeven_command(settings):
    lines = run(["breakeven", "mega-millions", "--x-min", "0.1", "--x-max", "1", "--n", "3"], settings).splitlines()

    assert lines[0] == "x,y"
    assert len(lines) == 4
    assert [line.split(",")[0] for line in lines[1:]] == ["0.1", "0.316228", "1"]


def test_rollover_command(settings):
    result = fields(run(["rollover", "lotto-texas", "--current-ratio", "1", "--target-ratio", "2"], settings))
    assert result["rollovers needed"] == "3"
    assert result["growth ratio"] == "1.27"
    assert "years between targets" not in result

    settings.set("rollover.growthRatio", 2.0)
    result = fields(
        run(["rollover", "lotto-texas", "--current-ratio", "1", "--target-ratio", "2", "--years-between", "2"], settings)
    )
    assert result["rollovers needed"] == "1"
    assert float(result["years between targets"]) > 2


def test_variance_command(settings):
    result = fields(run(["variance", "lotto-texas", "--N", "4.2m", "--J", "33.8m", "--syndicate", "1000"], settings))

    assert result["S"] == "1000"
    assert float(result["v"]) == pytest.approx(float(result["v1"]) / 1000, rel=1e-5)


def test_portfolio_command(settings):
    text = run(["portfolio", "--universe", UNIVERSE_FILE, "--rf", "0.01"], settings)
    assert "NASDAQ" in text
    assert "screen" not in text

    text = run(
        ["portfolio", "--universe", UNIVERSE_FILE, "--rf", "0.01", "--lottery-rl", "30", "--lottery-v", "4e6"],
        settings,
    )
    assert fields(text)["screen"] == "NEGLIGIBLE"
    assert "lottery" in text

    with pytest.raises(DomainError):
        run(["portfolio", "--universe", UNIVERSE_FILE, "--rf", "0.01", "--lottery-rl", "30"], settings)


def test_portfolio_command_z2_floor(settings, caplog):
    argv = ["portfolio", "--universe", UNIVERSE_FILE, "--rf", "0", "--lottery-rl", "30", "--lottery-v", "1e6"]
    assert fields(run(argv, settings))["screen"] == "INCONCLUSIVE"

    with caplog.at_level(logging.WARNING):
        text = run([*argv, "--z2-floor", "auto"], settings)
    assert "smallest positive weight" in caplog.text
    assert float(fields(text)["z2 floor"]) == pytest.approx(0.019, abs=0.002)


def test_resolve_z2_floor():
    universe = load_universe(UNIVERSE_FILE)
    assert resolve_z2_floor("0.05", universe, 0, 0.0005) == 0.05
    assert resolve_z2_floor(0.022, universe, 0, 0.0005) == 0.022
    with pytest.raises(ConfigError):
        resolve_z2_floor("lots", universe, 0, 0.0005)


def test_simulate_command(settings, tmp_path):
    path = tmp_path / "toy.json"
    path.write_text(json.dumps({"name": "toy", "t": 100}), encoding="utf-8")
    settings.set("simulation.chunkSize", 1000)

    result = fields(run(["simulate", str(path), "--N", "50", "--J", "200", "--trials", "5000", "--seed", "3"], settings))

    expected = simulate_drawings(
        load_lottery_config(str(path)), DrawingParams(N=50, J=200), 5000, seed=3, chunk_size=1000
    )
    assert result["mean RoR"] == reports.fmt(expected.mean_ror)
    assert result["trials"] == "5000"


def test_drawings_command(settings):
    lines = run(["drawings", DRAWINGS_FILE, "--workers", "2"], settings).splitlines()

    assert lines[0] == "date,lottery,N,J,x,y,eror,verdict"
    assert [line.split(",")[-1] for line in lines[1:]] == ["POSITIVE", "NEGATIVE", "NEGATIVE", "NEGATIVE"]
    assert lines[2].startswith("2007-03-06,mega-millions,2.12e+08,1.7475e+08,")

    with pytest.raises(DomainError):
        run(["drawings", DRAWINGS_FILE, "--workers", "0"], settings)


def test_lotteries_command(settings):
    assert run(["lotteries"], settings) == "lotto-texas\nmega-millions\nnj-pick6\npowerball\n"
