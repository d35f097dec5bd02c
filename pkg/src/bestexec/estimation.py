"""Online ordinary-least-squares estimation of the market dynamics.

From the realized price changes, own orders and the observed information
series, each period refits

    (theta_hat, gamma_hat)  minimizing sum_k (dP_k - theta*B_k - gamma*X_k)^2
    rho_hat               = sum_k X_{k-1} X_k / sum_k X_{k-1}^2   (in-sample lags only)
    sigma_eps_sq_hat      = (1/(t-1)) sum_k (dP_k - theta_hat*B_k - gamma_hat*X_k)^2
    sigma_eta_sq_hat      = (1/(t-1)) sum_k (X_k - rho_hat*X_{k-1})^2

The impact fit solves the 2x2 normal equations by Cramer's rule and refuses
designs with condition number above COND_LIMIT (early histories have nearly
constant orders, which makes the design nearly singular). rho_hat is clamped
to [-RHO_CLAMP, RHO_CLAMP]; a clamped fit is flagged invalid so strategy code
falls back to the uniform split. Failed fits never raise out of
estimate_all: they are encoded in the validity flags, and prior values (when
supplied) are carried forward untouched.

Because the order adjustment factor divides by theta_hat, a tiny positive
theta_hat is as unusable as a nonpositive one (the implied order explodes).
estimate_all therefore also requires theta_hat to clear THETA_TSTAT_MIN
standard errors before flagging the impact fit valid; the gate loosens
automatically as the sample grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "EstimationError",
    "ObservationHistory",
    "ParameterEstimates",
    "RHO_CLAMP",
    "COND_LIMIT",
    "THETA_TSTAT_MIN",
    "fit_impact",
    "fit_rho",
    "fit_variances",
    "estimate_all",
]

RHO_CLAMP = 0.999
COND_LIMIT = 1e12
THETA_TSTAT_MIN = 2.0


class EstimationError(ValueError):
    """A fit could not be produced (singular or ill-conditioned design)."""


class ObservationHistory:
    """Append-only regression sample: one record (dP_k, B_k, X_k) per period.

    The lagged information series starts at x0 (the pre-trade information
    value), so the rho regressors for record k are (X_{k-1}, X_k).
    """

    def __init__(self, x0: float = 0.0):
        self._delta_p: list[float] = []
        self._orders: list[float] = []
        self._info: list[float] = []
        self._x0 = float(x0)

    def append(self, delta_p: float, order: float, info: float) -> None:
        self._delta_p.append(float(delta_p))
        self._orders.append(float(order))
        self._info.append(float(info))

    @property
    def n_obs(self) -> int:
        return len(self._delta_p)

    @property
    def delta_p(self) -> np.ndarray:
        return np.asarray(self._delta_p)

    @property
    def orders(self) -> np.ndarray:
        return np.asarray(self._orders)

    @property
    def info(self) -> np.ndarray:
        return np.asarray(self._info)

    def info_series(self) -> np.ndarray:
        """The information series including its pre-trade start: (x0, X_1..X_t)."""
        return np.asarray([self._x0] + self._info)


@dataclass(frozen=True)
class ParameterEstimates:
    """The five online estimates plus validity flags.

    impact_valid: the (theta, gamma) design was well conditioned at fit time
                  and theta_hat cleared its significance gate.
    rho_valid:    the lag regression was nonsingular and needed no clamping.
    Values from failed fits are NaN unless a prior carried them forward.
    """

    theta_hat: float
    gamma_hat: float
    rho_hat: float
    sigma_eps_sq_hat: float
    sigma_eta_sq_hat: float
    impact_valid: bool
    rho_valid: bool
    n_obs: int

    @classmethod
    def invalid(cls) -> "ParameterEstimates":
        nan = float("nan")
        return cls(nan, nan, nan, nan, nan, False, False, 0)


def fit_impact(history: ObservationHistory) -> tuple[float, float]:
    """Least-squares (theta_hat, gamma_hat) from dP_k on (B_k, X_k).

    Requires at least two observations and a well-conditioned design matrix
    [[sum B^2, sum XB], [sum XB, sum X^2]]; raises EstimationError otherwise.
    The returned pair is the unique minimizer, so residuals are orthogonal to
    both regressors.
    """
    if history.n_obs < 2:
        raise EstimationError(f"impact fit needs >= 2 observations (got {history.n_obs})")
    b = history.orders
    x = history.info
    dp = history.delta_p
    sbb = float(b @ b)
    sxb = float(x @ b)
    sxx = float(x @ x)
    det = sbb * sxx - sxb * sxb
    if det <= 0.0 or _cond_2x2(sbb, sxb, sxx) > COND_LIMIT:
        raise EstimationError("impact design is singular or ill-conditioned")
    spb = float(dp @ b)
    spx = float(dp @ x)
    theta_hat = (sxx * spb - sxb * spx) / det
    gamma_hat = (sbb * spx - sxb * spb) / det
    return theta_hat, gamma_hat


def _cond_2x2(m00: float, m01: float, m11: float) -> float:
    """2-norm condition number of the symmetric matrix [[m00, m01], [m01, m11]]."""
    tr = m00 + m11
    det = m00 * m11 - m01 * m01
    disc = math.sqrt(max(tr * tr - 4.0 * det, 0.0))
    lo = (tr - disc) / 2.0
    hi = (tr + disc) / 2.0
    if lo <= 0.0:
        return math.inf
    return hi / lo


def _rho_raw(info_series: Sequence[float]) -> float:
    """Unclamped lag-one regression slope over in-sample pairs only."""
    x = np.asarray(info_series, dtype=float)
    if len(x) < 2:
        raise EstimationError("rho fit needs >= 2 information values")
    lag = x[:-1]
    cur = x[1:]
    den = float(lag @ lag)
    if den == 0.0:
        raise EstimationError("rho design is singular (all-zero lag series)")
    return float(lag @ cur) / den


def fit_rho(info_series: Sequence[float]) -> float:
    """rho_hat from the information series (x0, X_1, ..., X_t), clamped to
    [-RHO_CLAMP, RHO_CLAMP]. Never uses future values: record k regresses
    X_k on X_{k-1}. Raises EstimationError when every lag value is zero."""
    raw = _rho_raw(info_series)
    return min(max(raw, -RHO_CLAMP), RHO_CLAMP)


def fit_variances(history: ObservationHistory,
                  estimates: "ParameterEstimates") -> tuple[float, float]:
    """Residual variances of both equations at the supplied estimates, each
    normalized by 1/(t-1). Requires t >= 2 and valid estimate values."""
    t = history.n_obs
    if t < 2:
        raise EstimationError(f"variance fit needs >= 2 observations (got {t})")
    for name in ("theta_hat", "gamma_hat", "rho_hat"):
        if math.isnan(getattr(estimates, name)):
            raise EstimationError(f"variance fit needs a value for {name}")
    r_price = history.delta_p - estimates.theta_hat * history.orders \
        - estimates.gamma_hat * history.info
    series = history.info_series()
    r_info = series[1:] - estimates.rho_hat * series[:-1]
    return float(r_price @ r_price) / (t - 1), float(r_info @ r_info) / (t - 1)


def _theta_significant(history: ObservationHistory, theta_hat: float,
                       s2e_hat: float) -> bool:
    """theta_hat must clear THETA_TSTAT_MIN standard errors to be usable.

    Var(theta_hat) = s2e * sum X^2 / det from the normal equations, with the
    residual variance on a degrees-of-freedom basis (two fitted parameters),
    so at least three observations are required: a two-point fit interpolates
    exactly and says nothing about theta. A genuinely zero residual variance
    (noiseless fit) is significant for any theta_hat > 0.
    """
    if not theta_hat > 0.0:
        return False
    n = history.n_obs
    if n < 3:
        return False
    b = history.orders
    x = history.info
    sbb = float(b @ b)
    sxb = float(x @ b)
    sxx = float(x @ x)
    det = sbb * sxx - sxb * sxb
    sse = s2e_hat * (n - 1)
    var_theta = sse / (n - 2) * sxx / det
    if var_theta <= 0.0:
        return True
    return theta_hat >= THETA_TSTAT_MIN * math.sqrt(var_theta)


def estimate_all(history: ObservationHistory,
                 prior: ParameterEstimates | None = None) -> ParameterEstimates:
    """Run the impact, rho and variance fits in order, encoding failures in
    the validity flags. Fields of a failed fit keep the prior's values when a
    prior is given, NaN otherwise."""
    base = prior if prior is not None else ParameterEstimates.invalid()
    theta_hat, gamma_hat = base.theta_hat, base.gamma_hat
    rho_hat = base.rho_hat
    s2e_hat, s2h_hat = base.sigma_eps_sq_hat, base.sigma_eta_sq_hat
    impact_valid = False
    rho_valid = False

    impact_fitted = False
    try:
        theta_hat, gamma_hat = fit_impact(history)
        impact_fitted = True
    except EstimationError:
        pass

    rho_fitted = False
    try:
        raw = _rho_raw(history.info_series())
        rho_hat = min(max(raw, -RHO_CLAMP), RHO_CLAMP)
        rho_fitted = True
        rho_valid = rho_hat == raw
    except EstimationError:
        pass

    if history.n_obs >= 2:
        if impact_fitted:
            r = history.delta_p - theta_hat * history.orders - gamma_hat * history.info
            s2e_hat = float(r @ r) / (history.n_obs - 1)
            impact_valid = _theta_significant(history, theta_hat, s2e_hat)
        if rho_fitted:
            series = history.info_series()
            r = series[1:] - rho_hat * series[:-1]
            s2h_hat = float(r @ r) / (history.n_obs - 1)

    return ParameterEstimates(
        theta_hat=theta_hat, gamma_hat=gamma_hat, rho_hat=rho_hat,
        sigma_eps_sq_hat=s2e_hat, sigma_eta_sq_hat=s2h_hat,
        impact_valid=impact_valid, rho_valid=rho_valid, n_obs=history.n_obs,
    )
