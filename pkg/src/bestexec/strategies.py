"""Order-sizing rules for the three block-execution strategies.

Naive          uniform split: B_t = S_t / (T - t + 1).
Informed       Bellman-optimal split under known dynamics:
               B_t = e_t * S_t + f_t * X_{t-1}.
Auto-regressive  the informed shape driven by online least-squares estimates
               and a closed-form adjustment factor, falling back to the
               uniform split until the estimates are usable.

The informed coefficients come from backward induction over the remaining
horizon k = T - t + 1. Writing the optimal remaining cost, given last price p,
last observed information x and s shares left, as

    V(p, x, s) = s*p + a*s^2 + b*s*x + c*x^2 + d

the one-step minimization (decisions are made before the period's shocks
realize, so the current information enters only through its conditional mean
rho*x) gives the base case k=1 (forced final order)

    a = theta, b = gamma*rho, c = 0, d = 0, e = 1, f = 0

and the recursion, with primes denoting the k-1 values,

    a = theta*(k+1)/(2k)                       (closed form of a = theta - theta^2/(4a'))
    b = rho*(gamma + theta*b'/(2a'))
    c = rho^2 * (c' - b'^2/(4a'))
    d = d' + c' * sigma_eta_sq
    e = 1/k
    f = rho*b'/(2a')

Each step is strictly convex for theta > 0, c and d are nonpositive, and the
schedule is validated against an independent brute-force minimizer in the
test suite. Because decisions act on one-period-lagged information, the
information coupling carries one factor of rho more than the naive completion
of the square suggests; docs/value_function_conventions.md works through the
alternative convention and the benchmark values each one produces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .market import MarketParams, MarketState

__all__ = [
    "CoefficientSchedule",
    "OrderDecision",
    "naive_order",
    "solve_coefficients",
    "informed_order",
    "ar_adjustment_factor",
    "decide_order",
    "STRATEGIES",
]

STRATEGIES = ("naive", "informed", "ar")


@dataclass(frozen=True)
class CoefficientSchedule:
    """Per-period value-function and order coefficients, periods 1..T.

    Arrays are indexed by t-1. Invariants: a > 0 everywhere, e_t = 1/(T-t+1)
    exactly, e_T = 1, f_T = 0; gamma = 0 or rho = 0 zeroes b, c, d and f.
    """

    horizon: int
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    e: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        for arr in (self.a, self.b, self.c, self.d, self.e, self.f):
            arr.flags.writeable = False

    def at(self, t: int) -> tuple[float, float, float, float, float, float]:
        """Coefficients (a, b, c, d, e, f) for period t (1-based)."""
        if not 1 <= t <= self.horizon:
            raise ValueError(f"t: period {t} outside schedule horizon {self.horizon}")
        i = t - 1
        return (self.a[i], self.b[i], self.c[i], self.d[i], self.e[i], self.f[i])


@dataclass(frozen=True)
class OrderDecision:
    """An order size together with the rule that produced it."""

    order: float
    rationale_tag: str  # naive_fallback | informed | autoregressive | final_period


def naive_order(shares_remaining: float, t: int, horizon: int) -> float:
    """Uniform split of the remaining shares: S_t / (T - t + 1).

    Followed from t = 1 without perturbation this is the constant S_0 / T;
    the final period always takes the full remainder.
    """
    if not 1 <= t <= horizon:
        raise ValueError(f"t: period {t} outside 1..{horizon}")
    return shares_remaining / (horizon - t + 1)


def solve_coefficients(params: MarketParams, horizon: int) -> CoefficientSchedule:
    """Backward induction for the informed strategy's coefficient schedule.

    Requires params.theta > 0 (strict convexity of every Bellman step) and
    |rho| < 1 (already enforced by MarketParams).
    """
    if params.theta <= 0.0:
        raise ValueError(f"theta: must be > 0 for a convex Bellman step (got {params.theta})")
    T = int(horizon)
    if T < 1:
        raise ValueError(f"horizon: must be >= 1 (got {horizon})")
    theta, gamma, rho = params.theta, params.gamma, params.rho
    s2h = params.sigma_eta_sq

    # remaining-horizon arrays, k = 1..T at index k-1
    a = np.empty(T)
    b = np.empty(T)
    c = np.empty(T)
    d = np.empty(T)
    e = np.empty(T)
    f = np.empty(T)
    a[0], b[0], c[0], d[0], e[0], f[0] = theta, gamma * rho, 0.0, 0.0, 1.0, 0.0
    for k in range(2, T + 1):
        ap, bp, cp, dp = a[k - 2], b[k - 2], c[k - 2], d[k - 2]
        a[k - 1] = theta * (k + 1) / (2.0 * k)
        e[k - 1] = 1.0 / k
        f[k - 1] = rho * bp / (2.0 * ap)
        b[k - 1] = rho * (gamma + theta * bp / (2.0 * ap))
        c[k - 1] = rho * rho * (cp - bp * bp / (4.0 * ap))
        d[k - 1] = dp + cp * s2h

    # reindex to periods: period t has k = T - t + 1 remaining
    rev = slice(None, None, -1)
    return CoefficientSchedule(
        horizon=T, a=a[rev].copy(), b=b[rev].copy(), c=c[rev].copy(),
        d=d[rev].copy(), e=e[rev].copy(), f=f[rev].copy(),
    )


def informed_order(shares_remaining: float, x_prev: float, t: int,
                   schedule: CoefficientSchedule) -> OrderDecision:
    """Optimal order under known dynamics: B_t = e_t*S_t + f_t*X_{t-1}.

    At t = T the coefficients force the full remainder (e_T = 1, f_T = 0)
    regardless of the information value.
    """
    f_t = schedule.at(t)[5]
    if t == schedule.horizon:
        return OrderDecision(order=shares_remaining, rationale_tag="final_period")
    # e_t = 1/(T-t+1) exactly, so the uniform part is computed as the division
    uniform = shares_remaining / (schedule.horizon - t + 1)
    return OrderDecision(order=uniform + f_t * x_prev, rationale_tag="informed")


def ar_adjustment_factor(theta_hat: float, gamma_hat: float, rho_hat: float,
                         t: int, horizon: int) -> float:
    """Closed-form shares-per-information-unit tilt used by the online strategy:

        f_hat_t = gamma_hat / (theta_hat * (T - t + 1)) * sum_{k=1}^{T-t} (T - t - k) * rho_hat^k

    The sum is empty at t = T and its k = T-t term carries zero weight, so the
    factor vanishes with two or fewer periods remaining; the recursive informed
    f_t does not. The brute-force tests arbitrate in favor of the recursive
    form for the informed strategy; this closed form is what the online
    strategy applies to its estimates (see docs/value_function_conventions.md).
    """
    if theta_hat <= 0.0:
        raise ValueError(f"theta_hat: must be > 0 (got {theta_hat})")
    if not abs(rho_hat) < 1.0:
        raise ValueError(f"rho_hat: |rho_hat| must be < 1 (got {rho_hat})")
    m = horizon - t
    if m <= 1 or rho_hat == 0.0:
        return 0.0  # every weight (m - k) over k = 1..m vanishes for m <= 1
    # sum_{k=1}^{m} (m-k) r^k = m*S1 - S2 with S1 = sum r^k, S2 = sum k r^k
    r = rho_hat
    s1 = r * (1.0 - r**m) / (1.0 - r)
    s2 = r * (1.0 - (m + 1) * r**m + m * r**(m + 1)) / (1.0 - r) ** 2
    return gamma_hat / (theta_hat * (horizon - t + 1)) * (m * s1 - s2)


def decide_order(strategy_kind: str, state: MarketState, horizon: int,
                 schedule: CoefficientSchedule | None = None,
                 estimates=None) -> OrderDecision:
    """Uniform strategy interface over the three order rules.

    naive     -> uniform split.
    informed  -> schedule order (schedule required).
    ar        -> e_t*S_t + f_hat_t*X_{t-1} from the current estimates, falling
                 back to the uniform split whenever the estimates are missing,
                 flagged invalid, or carry a nonpositive theta_hat.

    The final period always returns the full remainder for every strategy.
    """
    if strategy_kind not in STRATEGIES:
        raise ValueError(f"strategy_kind: unknown strategy {strategy_kind!r}")
    t, s = state.t, state.shares_remaining
    if t == horizon:
        return OrderDecision(order=s, rationale_tag="final_period")

    if strategy_kind == "naive":
        return OrderDecision(order=naive_order(s, t, horizon), rationale_tag="naive_fallback")

    if strategy_kind == "informed":
        if schedule is None:
            raise ValueError("informed strategy requires a coefficient schedule")
        return informed_order(s, state.info, t, schedule)

    # auto-regressive
    if (estimates is None or not estimates.impact_valid or not estimates.rho_valid
            or not estimates.theta_hat > 0.0):
        return OrderDecision(order=naive_order(s, t, horizon), rationale_tag="naive_fallback")
    f_hat = ar_adjustment_factor(estimates.theta_hat, estimates.gamma_hat,
                                 estimates.rho_hat, t, horizon)
    uniform = s / (horizon - t + 1)
    return OrderDecision(order=uniform + f_hat * state.info,
                         rationale_tag="autoregressive")
