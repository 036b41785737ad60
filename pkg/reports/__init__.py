"""
Plain-text reports printed by the command line.
Every number goes through fmt() so that outputs are stable from one run to the next.
"""
import io

import pandas as pd

from lottery.breakeven import Verdict

DEFAULT_SIGNIFICANT_FIGURES = 6


def fmt(value, digits=DEFAULT_SIGNIFICANT_FIGURES):
    return f"{value:.{digits}g}"


def fmt_percent(value, digits=DEFAULT_SIGNIFICANT_FIGURES):
    return f"{value * 100:.{digits}g}%"


def _lines(pairs):
    width = max(len(key) for key, _ in pairs)
    return "\n".join(f"{key.ljust(width)} : {value}" for key, value in pairs) + "\n"


def render_stats(config, stats, digits=DEFAULT_SIGNIFICANT_FIGURES):
    return _lines(
        [
            ("lottery", config.name),
            ("t", str(config.t)),
            ("f", fmt(stats.f, digits)),
            ("F", fmt(stats.F, digits)),
            ("J0", fmt(stats.j0, digits)),
        ]
    )


def render_eror(config, drawing, breakdown, hit_probability, adjusted=None, digits=DEFAULT_SIGNIFICANT_FIGURES):
    pairs = [
        ("lottery", config.name),
        ("N", fmt(drawing.N, digits)),
        ("J", fmt(drawing.J, digits)),
        ("cost less fixed prizes", fmt(breakdown.cost_and_fixed, digits)),
    ]
    pairs += [(f"pari-mutuel pool {i + 1}", fmt(term, digits)) for i, term in enumerate(breakdown.pari_terms)]
    pairs += [
        ("jackpot", fmt(breakdown.jackpot_term, digits)),
        ("eRoR", fmt_percent(breakdown.total, digits)),
        ("jackpot won", fmt(hit_probability, digits)),
        ("rollover", fmt(1 - hit_probability, digits)),
    ]
    if adjusted is not None:
        pairs.append(("eRoR, unpopular numbers", fmt_percent(adjusted.total, digits)))
    return _lines(pairs)


def render_classification(config, classification, method, digits=DEFAULT_SIGNIFICANT_FIGURES):
    pairs = [
        ("lottery", config.name),
        ("method", method),
        ("N/J", fmt(classification.coords.x, digits)),
        ("J/J0", fmt(classification.coords.y, digits)),
        ("verdict", classification.verdict.value.upper()),
        ("rule", classification.rule.value.upper()),
    ]
    text = _lines(pairs)
    if classification.verdict is Verdict.INCONCLUSIVE:
        text += "hint: the general bounds cannot decide, run again with `--method exact`\n"
    return text


def render_curve(points, digits=DEFAULT_SIGNIFICANT_FIGURES):
    return "x,y\n" + "".join(f"{fmt(p.x, digits)},{fmt(p.y, digits)}\n" for p in points)


def render_rollover(config, forecast, frequency=None, digits=DEFAULT_SIGNIFICANT_FIGURES):
    pairs = [
        ("lottery", config.name),
        ("growth ratio", fmt(forecast.growth_ratio, digits)),
        ("rollovers needed", str(forecast.k)),
        ("chance at most", fmt(forecast.survival_probability_bound, digits)),
    ]
    if frequency is not None:
        pairs.append(("years between targets", fmt(frequency, digits)))
    return _lines(pairs)


def render_variance(config, variance, digits=DEFAULT_SIGNIFICANT_FIGURES):
    return _lines(
        [
            ("lottery", config.name),
            ("v1", fmt(variance.v1, digits)),
            ("S", str(variance.S)),
            ("v", fmt(variance.v, digits)),
        ]
    )


def render_portfolio(solution, digits=DEFAULT_SIGNIFICANT_FIGURES):
    frame = pd.DataFrame(
        {
            "asset": solution.names,
            "Z": [fmt(z, digits) for z in solution.Z],
            "X": [fmt(x, digits) for x in solution.X],
            "negligible": ["yes" if flag else "no" for flag in solution.negligible],
        }
    )
    header = _lines([("R_F", fmt(solution.r_f, digits)), ("theta", fmt(solution.theta, digits))])
    return header + frame.to_string(index=False) + "\n"


def render_screen(screen_negligible, threshold, z2_floor, digits=DEFAULT_SIGNIFICANT_FIGURES):
    verdict = "NEGLIGIBLE" if screen_negligible else "INCONCLUSIVE"
    return _lines(
        [
            ("z2 floor", fmt(z2_floor, digits)),
            ("variance threshold", fmt(threshold, digits)),
            ("screen", verdict),
        ]
    )


def render_simulation(config, result, digits=DEFAULT_SIGNIFICANT_FIGURES):
    return _lines(
        [
            ("lottery", config.name),
            ("trials", str(result.n_trials)),
            ("seed", str(result.seed)),
            ("algorithm", result.algorithm),
            ("mean RoR", fmt(result.mean_ror, digits)),
            ("variance", fmt(result.var_ror, digits)),
            ("standard error", fmt(result.std_error, digits)),
        ]
    )


def render_drawing_analyses(rows, digits=DEFAULT_SIGNIFICANT_FIGURES):
    """rows: dicts with date, lottery, N, J, x, y, eror, verdict (in input order)"""
    frame = pd.DataFrame(rows, columns=["date", "lottery", "N", "J", "x", "y", "eror", "verdict"])
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=f"%.{digits}g", lineterminator="\n")
    return buffer.getvalue()
