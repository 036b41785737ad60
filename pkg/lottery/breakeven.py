"""
Break-even curves and bet classification.

Drawings are placed in the plane (x, y) = (N/J, J/j0). For a given lottery, the break-even
curve y = l(x) is where the eRoR is zero: drawings above it are good bets, drawings below
it are bad bets. l(x) is defined on (0, 1/F); for x >= 1/F the eRoR is always negative.

For every major lottery (t >= 500) with F >= 0.8, l(x) lies between two universal curves:
    U: -1   + (1 - 0.45^(xy)) / x = 0    (above U: positive eRoR)
    L: -0.8 + (1 - 0.36^(xy)) / x = 0    (below or right of L: negative eRoR)
"""
import logging
import math
from collections import namedtuple
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import optimize

from lottery import DrawingParams
from lottery import MAJOR_LOTTERY_TICKETS
from lottery import derive_stats
from lottery.errors import DomainError
from lottery.errors import TheoremHypothesisError
from lottery.returns import expected_ror

# (base, cost) of the bounding curves: -cost + (1 - base^(xy)) / x = 0
U_CURVE = (0.45, 1.0)
L_CURVE = (0.36, 0.8)

# The universal bounds need F at least this large
THEOREM_MIN_F = 0.8

# A point this close (in residual) to U or L counts as on the curve
ON_CURVE_TOLERANCE = 1e-12

# Corners of the rectangles: (0.2, 1.4) is (about) on U, (1.12, 2) is (about) on L
SMALL_SALES_MAX_X = 0.2
SMALL_SALES_MIN_Y = 1.4
LARGE_SALES_MIN_X = 1.12
LARGE_SALES_MAX_Y = 2.0

# Bisection on y
BISECT_XTOL = 1e-15
BISECT_RTOL = 1e-12
BISECT_MAXITER = 200
MAX_BRACKET_DOUBLINGS = 1000

CurvePoint = namedtuple("CurvePoint", ["x", "y"])


class Verdict(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    INCONCLUSIVE = "inconclusive"


class Rule(Enum):
    CUTOFF = "cutoff"
    ABOVE_U = "above_u"
    BELOW_L = "below_l"
    BETWEEN_U_AND_L = "between_u_and_l"
    EXACT_CURVE = "exact_curve"
    SMALL_SALES_RECT = "small_sales_rect"
    LARGE_SALES_RECT = "large_sales_rect"
    NO_RECTANGLE = "no_rectangle"


@dataclass(frozen=True)
class NormalizedDrawing:
    x: float
    y: float

    def __post_init__(self):
        if not (self.x > 0 and self.y > 0):
            raise DomainError(f"normalized coordinates must be positive (was: x={self.x}, y={self.y})")


@dataclass(frozen=True)
class BetClassification:
    verdict: Verdict
    rule: Rule
    coords: NormalizedDrawing


def normalize(stats, drawing):
    """(N, J) -> (x, y) = (N/J, J/j0)"""
    return NormalizedDrawing(x=drawing.N / drawing.J, y=drawing.J / stats.j0)


def denormalize(stats, coords):
    """(x, y) -> (N, J) = (x * y * j0, y * j0)"""
    J = coords.y * stats.j0
    return DrawingParams(N=coords.x * J, J=J)


###############################################################
# UNIVERSAL BOUNDS (U, L) AND RECTANGLES                      #
###############################################################


def bound_residual(x, y, curve):
    """-cost + (1 - base^(xy)) / x for curve = (base, cost). Positive above the curve."""
    base, cost = curve
    return -cost - math.expm1(x * y * math.log(base)) / x


def bound_curve_y(x, curve):
    """Closed-form inversion of a bounding curve: y = ln(1 - cost * x) / (x * ln(base)).
    Returns +inf where the curve has no point (x >= 1 / cost).
    """
    base, cost = curve
    if x <= 0:
        raise DomainError(f"x must be positive (was: {x})")
    if cost * x >= 1:
        return math.inf
    return math.log1p(-cost * x) / (x * math.log(base))


def upper_curve_y(x):
    return bound_curve_y(x, U_CURVE)


def lower_curve_y(x):
    return bound_curve_y(x, L_CURVE)


def check_theorem_hypotheses(stats):
    """The universal bounds are only proven for major lotteries with F >= 0.8"""
    if stats.t < MAJOR_LOTTERY_TICKETS:
        raise TheoremHypothesisError(
            f"general bounds need a major lottery (t >= {MAJOR_LOTTERY_TICKETS}), this one has t={stats.t}"
        )
    if stats.F < THEOREM_MIN_F:
        raise TheoremHypothesisError(f"general bounds need F >= {THEOREM_MIN_F}, this lottery has F={stats.F}")


def general_bound_classify(coords, stats=None):
    """Classifies a drawing with the universal curves only:
    - y < 1 (J < j0): NEGATIVE by the jackpot cutoff
    - strictly above U: POSITIVE
    - strictly below (or right of) L: NEGATIVE
    - otherwise, including points on U or L: INCONCLUSIVE
    When `stats` is given, the hypotheses of the bounds are checked first.
    """
    if stats is not None:
        check_theorem_hypotheses(stats)

    if coords.y < 1:
        return BetClassification(Verdict.NEGATIVE, Rule.CUTOFF, coords)
    if bound_residual(coords.x, coords.y, U_CURVE) > ON_CURVE_TOLERANCE:
        return BetClassification(Verdict.POSITIVE, Rule.ABOVE_U, coords)
    if bound_residual(coords.x, coords.y, L_CURVE) < -ON_CURVE_TOLERANCE:
        return BetClassification(Verdict.NEGATIVE, Rule.BELOW_L, coords)
    return BetClassification(Verdict.INCONCLUSIVE, Rule.BETWEEN_U_AND_L, coords)


def small_sales_rule(drawing, stats):
    """N < 0.2 J and J > 1.4 j0: the drawing is above U, so a good bet"""
    check_theorem_hypotheses(stats)
    return drawing.N < SMALL_SALES_MAX_X * drawing.J and drawing.J > SMALL_SALES_MIN_Y * stats.j0


def large_sales_rule(drawing, stats):
    """N > 1.12 J and J < 2 j0: the drawing is below or right of L, so a bad bet"""
    check_theorem_hypotheses(stats)
    return drawing.N > LARGE_SALES_MIN_X * drawing.J and drawing.J < LARGE_SALES_MAX_Y * stats.j0


###############################################################
# EXACT BREAK-EVEN CURVE OF ONE LOTTERY                       #
###############################################################


def expected_ror_xy(config, x, y, stats=None):
    """eRoR of the drawing at (x, y); tends to -f as y goes to 0"""
    stats = stats or derive_stats(config)
    if y <= 0:
        return -stats.f
    return expected_ror(config, denormalize(stats, NormalizedDrawing(x, y)), stats).total


def breakeven_curve(config, x, stats=None):
    """Returns l(x): the y such that the eRoR at (x, y) is zero.
    The eRoR is strictly increasing in y, from -f at y = 0 to -F + 1/x as y grows,
    so the root is bracketed by doubling an upper bound, then found by bisection.
    """
    stats = stats or derive_stats(config)
    if not 0 < x < 1 / stats.F:
        raise DomainError(f"the break-even curve is defined for 0 < x < 1/F = {1 / stats.F} (was: x={x})")

    def residual(y):
        return expected_ror_xy(config, x, y, stats)

    y_low, y_high = 0.0, 1.0
    doublings = 0
    while residual(y_high) <= 0:
        y_low, y_high = y_high, 2 * y_high
        doublings += 1
        if doublings > MAX_BRACKET_DOUBLINGS:
            raise DomainError(f"unable to bracket the break-even point at x={x}: x is too close to 1/F")
    logging.debug(f"break-even point of '{config.name}' at x={x} bracketed in [{y_low}, {y_high}]")

    return optimize.bisect(
        residual, y_low, y_high, xtol=BISECT_XTOL, rtol=BISECT_RTOL, maxiter=BISECT_MAXITER
    )


def exact_curve_classify(config, drawing, stats=None):
    """POSITIVE strictly above l(x), NEGATIVE otherwise (zero eRoR is not a good bet).
    Drawings with x >= 1/F are NEGATIVE without looking for the curve.
    """
    stats = stats or derive_stats(config)
    coords = normalize(stats, drawing)

    if coords.x >= 1 / stats.F or coords.y <= breakeven_curve(config, coords.x, stats):
        return BetClassification(Verdict.NEGATIVE, Rule.EXACT_CURVE, coords)
    return BetClassification(Verdict.POSITIVE, Rule.EXACT_CURVE, coords)


def curve_points(config, x_min, x_max, n, stats=None):
    """n points (x, l(x)) with x on a geometric grid from x_min to x_max (both included)"""
    stats = stats or derive_stats(config)
    if n < 2:
        raise DomainError(f"at least 2 points are needed (was: {n})")
    if not 0 < x_min < x_max < 1 / stats.F:
        raise DomainError(f"need 0 < x_min < x_max < 1/F = {1 / stats.F} (was: {x_min}, {x_max})")

    return [CurvePoint(float(x), breakeven_curve(config, float(x), stats)) for x in np.geomspace(x_min, x_max, n)]


###############################################################
# CLASSIFICATION DISPATCHER                                   #
###############################################################


def classification_method_dispatcher(func):
    """Decorator registering one classification function per method name
    (`bounds`, `exact`, `rects`). The decorated function is the fallback and should raise.

    The registered function can be retrieved with <dispatcher>.dispatch(<method>)
    """
    registry = {None: func}

    def register(method):
        def inner(func):
            registry[method] = func
            return func

        return inner

    def decorator(config, drawing, method, stats=None):
        func = registry.get(method, registry[None])
        return func(config, drawing, method, stats or derive_stats(config))

    def dispatch(method):
        return registry.get(method, registry[None])

    decorator.register = register
    decorator.registry = registry
    decorator.dispatch = dispatch

    return decorator


@classification_method_dispatcher
def classify(config, drawing, method, stats=None):
    """Classifies `drawing` with the given method: see the registered functions below"""
    raise DomainError(f"unknown classification method '{method}'")


@classify.register("bounds")
def classify_with_bounds(config, drawing, method, stats):
    return general_bound_classify(normalize(stats, drawing), stats)


@classify.register("exact")
def classify_with_exact_curve(config, drawing, method, stats):
    return exact_curve_classify(config, drawing, stats)


@classify.register("rects")
def classify_with_rectangles(config, drawing, method, stats):
    coords = normalize(stats, drawing)
    if coords.y < 1:
        check_theorem_hypotheses(stats)
        return BetClassification(Verdict.NEGATIVE, Rule.CUTOFF, coords)
    if small_sales_rule(drawing, stats):
        return BetClassification(Verdict.POSITIVE, Rule.SMALL_SALES_RECT, coords)
    if large_sales_rule(drawing, stats):
        return BetClassification(Verdict.NEGATIVE, Rule.LARGE_SALES_RECT, coords)
    return BetClassification(Verdict.INCONCLUSIVE, Rule.NO_RECTANGLE, coords)
