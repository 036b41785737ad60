"""
Mean-variance analysis with Lintnerian short sales.

For expected weekly returns mu (%), covariances C (%^2) and a risk-free rate R_F (%), the
efficient risky portfolio is
    X = Z / sum_k |Z_k|      where   C Z = mu - R_F (1, ..., 1)
Shorting requires an equal cash collateral, hence the normalization by sum_k |Z_k|.

A lottery drawing with eRoR R_L and variance v, uncorrelated with the other assets, enters
as one more asset whose weight is (R_L - R_F) / v before normalization.
"""
import json
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import linalg

from lottery.errors import ConfigError
from lottery.errors import DomainError
from lottery.errors import NotPositiveDefiniteError
from lottery.errors import SingularMatrixError

DEFAULT_THETA = 1 / 2000
DEFAULT_Z2_FLOOR = 0.022

# C must be symmetric within this tolerance, relative to its largest entry
SYMMETRY_TOLERANCE = 1e-12
# A pivot smaller than this, relative to the largest row norm of the unit-diagonal C, means C is singular
PIVOT_TOLERANCE = 1e-12

LOTTERY_ASSET_NAME = "lottery"


def _frozen(values):
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class AssetUniverse:
    """names: asset identifiers; mu: expected weekly rates of return (%); C: covariances (%^2)"""

    names: tuple
    mu: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "mu", _frozen(self.mu))
        object.__setattr__(self, "C", _frozen(self.C))

        n = len(self.names)
        if self.mu.shape != (n,) or self.C.shape != (n, n):
            raise ConfigError(
                f"asset universe dimensions disagree: {n} names, mu {self.mu.shape}, covariances {self.C.shape}"
            )
        scale = np.max(np.abs(self.C)) if n else 0.0
        if np.max(np.abs(self.C - self.C.T), initial=0.0) > SYMMETRY_TOLERANCE * scale:
            raise ConfigError("covariance matrix is not symmetric")
        if np.any(np.diag(self.C) <= 0):
            degenerate = [name for name, var in zip(self.names, np.diag(self.C)) if var <= 0]
            raise NotPositiveDefiniteError(f"assets with no variance: {degenerate}")


@dataclass(frozen=True, eq=False)
class PortfolioSolution:
    """Z: unnormalized weights; X: weights with sum |X_k| = 1.
    Weights below `theta` in absolute value are negligible.
    """

    names: tuple
    r_f: float
    Z: np.ndarray
    X: np.ndarray
    theta: float

    @property
    def negligible(self):
        return np.abs(self.X) < self.theta

    def weight(self, name):
        return float(self.X[self.names.index(name)])


###############################################################
# UNIVERSE INGESTION                                          #
###############################################################


def universe_from_dict(data):
    """{"names": [...], "mu": [...], "cov": [[...], ...]} -> AssetUniverse"""
    try:
        return AssetUniverse(names=data["names"], mu=data["mu"], C=data["cov"])
    except KeyError as exc:
        raise ConfigError(f"asset universe is missing mandatory key {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"asset universe is malformed: {exc}") from exc


def load_universe(path):
    """Loads a universe fixture (JSON), or estimates one from a CSV of weekly returns"""
    if path.endswith(".csv"):
        return estimate_universe(load_return_series(path))

    logging.debug(f"Loading asset universe from '{path}'")
    try:
        with open(path, mode="r", encoding="utf-8") as file:
            return universe_from_dict(json.load(file))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON error in asset universe '{path}': {exc}") from exc


def load_return_series(path):
    """Reads `date,asset1,asset2,...` with ISO dates and weekly returns in %; empty cells are missing"""
    logging.debug(f"Loading weekly returns from '{path}'")
    try:
        frame = pd.read_csv(path, parse_dates=["date"], index_col="date")
    except ValueError as exc:
        raise ConfigError(f"weekly returns file '{path}' must have a `date` column: {exc}") from exc
    return frame.apply(pd.to_numeric, errors="raise")


def estimate_universe(series):
    """Sample means and (n - 1) covariances of weekly returns.
    `series` is a DataFrame (one column per asset) or a mapping name -> sequence of returns.
    Each covariance uses the observations both assets have (pairwise-complete), so that
    assets with shorter histories are kept.
    """
    if isinstance(series, pd.DataFrame):
        frame = series
    else:
        frame = pd.DataFrame({name: pd.Series(values, dtype=float) for name, values in series.items()})

    present = frame.notna().astype(int)
    overlap = present.T.dot(present)
    short = [
        (a, b) for i, a in enumerate(frame.columns) for b in frame.columns[i:] if overlap.loc[a, b] < 2
    ]
    if short:
        raise ConfigError(f"fewer than 2 overlapping observations for {short}")

    mu = frame.mean()
    cov = frame.cov(min_periods=2)
    logging.debug(f"estimated universe over {len(frame)} weeks:\n{cov}")
    return AssetUniverse(names=[str(c) for c in frame.columns], mu=mu.to_numpy(), C=cov.to_numpy())


###############################################################
# EFFICIENT PORTFOLIO                                         #
###############################################################


def check_positive_definite(C):
    try:
        np.linalg.cholesky(C)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(f"covariance matrix is not positive definite: {exc}") from exc


def solve_covariance_system(C, rhs):
    """Solves C z = rhs by LU factorization with partial pivoting.
    C is first rescaled to a unit diagonal (D C D with D = diag(C)^-1/2), so that a lottery
    variance of 10^11 next to bond variances of 0.2 does not pass for degeneracy.
    """
    scale = 1 / np.sqrt(np.diag(C))
    scaled = C * np.outer(scale, scale)

    lu, piv = linalg.lu_factor(scaled)
    row_norm = np.max(np.sum(np.abs(scaled), axis=1))
    pivots = np.abs(np.diag(lu))
    if np.min(pivots) < PIVOT_TOLERANCE * row_norm:
        raise SingularMatrixError(
            f"smallest pivot {np.min(pivots)} is below {PIVOT_TOLERANCE} x {row_norm}: covariances are degenerate"
        )
    return scale * linalg.lu_solve((lu, piv), scale * rhs)


def lintner_portfolio(universe, r_f, theta=DEFAULT_THETA):
    """Efficient portfolio of risky assets for the risk-free rate r_f (weekly, in %)"""
    if not r_f >= 0:
        raise DomainError(f"risk-free rate must be non-negative (was: {r_f})")
    if not theta > 0:
        raise DomainError(f"negligibility threshold theta must be positive (was: {theta})")

    check_positive_definite(universe.C)
    Z = solve_covariance_system(universe.C, universe.mu - r_f * np.ones(len(universe.names)))

    total = math.fsum(np.abs(Z))
    if total == 0:
        raise DomainError("every asset earns exactly the risk-free rate: no efficient risky portfolio")

    X = Z / total
    logging.debug(f"Lintner portfolio at R_F={r_f}: Z={Z}, X={X}")
    return PortfolioSolution(names=universe.names, r_f=r_f, Z=_frozen(Z), X=_frozen(X), theta=theta)


def augment_universe(universe, r_l, v, name=LOTTERY_ASSET_NAME):
    """Adds a lottery drawing (eRoR r_l, variance v, uncorrelated with everything) as the last asset"""
    if not v > 0:
        raise DomainError(f"lottery variance must be positive (was: {v})")
    n = len(universe.names)
    C = np.zeros((n + 1, n + 1))
    C[:n, :n] = universe.C
    C[n, n] = v
    return AssetUniverse(names=(*universe.names, name), mu=np.append(universe.mu, r_l), C=C)


def augmented_portfolio(universe, r_l, v, r_f, theta=DEFAULT_THETA):
    """Efficient portfolio once the lottery drawing is one of the assets.
    The covariance matrix is block diagonal, so the lottery's Z is (r_l - r_f) / v.
    """
    return lintner_portfolio(augment_universe(universe, r_l, v), r_f, theta)


def z_floor(solution):
    """Smallest positive entry of Z: stands in for the 0.022 floor of the negligibility screen
    when the universe is not the typical-risky-investments one
    """
    positive = [z for z in solution.Z if z > 0]
    if not positive:
        raise DomainError("no asset has a positive weight: the negligibility screen does not apply")
    return float(min(positive))


###############################################################
# NEGLIGIBILITY SCREEN                                        #
###############################################################


def _check_screen_parameters(theta, z2_floor):
    if not theta > 0:
        raise DomainError(f"negligibility threshold theta must be positive (was: {theta})")
    if not z2_floor > 0:
        raise DomainError(f"z2 floor must be positive (was: {z2_floor})")


def screen_threshold(r_l, r_f, theta=DEFAULT_THETA, z2_floor=DEFAULT_Z2_FLOOR):
    """(R_L - R_F) / (z2_floor * theta): variances at least this large make the lottery negligible"""
    _check_screen_parameters(theta, z2_floor)
    return (r_l - r_f) / (z2_floor * theta)


def negative_theorem_screen(r_l, r_f, v, theta=DEFAULT_THETA, z2_floor=DEFAULT_Z2_FLOOR):
    """True when an efficient portfolio is sure to hold a negligible fraction (< theta) of the lottery:
    v >= (R_L - R_F) / (z2_floor * theta).
    A lottery not beating the risk-free rate is always rejected.
    """
    _check_screen_parameters(theta, z2_floor)
    if not v > 0:
        raise DomainError(f"lottery variance must be positive (was: {v})")
    if r_l <= r_f:
        logging.info("the lottery does not beat the risk-free rate: it only adds risk")
        return True
    return v >= screen_threshold(r_l, r_f, theta, z2_floor)


def min_syndicate_size(r_l, r_f, v1, theta=DEFAULT_THETA, z2_floor=DEFAULT_Z2_FLOOR):
    """Smallest syndicate size S for which v1 / S falls below the screen threshold,
    i.e. the first size at which the lottery might deserve a non-negligible weight
    """
    if not v1 > 0:
        raise DomainError(f"single-ticket variance must be positive (was: {v1})")
    if r_l <= r_f:
        raise DomainError(f"a lottery with R_L={r_l} <= R_F={r_f} is never worth including")

    threshold = screen_threshold(r_l, r_f, theta, z2_floor)
    S = math.floor(v1 / threshold) + 1
    # v1 / S must be strictly below the threshold, and v1 / (S - 1) must not
    while v1 / S >= threshold:
        S += 1
    while S > 1 and v1 / (S - 1) < threshold:
        S -= 1
    return S
