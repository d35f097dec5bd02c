"""Single strategy episodes (blotters) and paired-noise Monte Carlo studies.

An episode walks the mandate's horizon period by period: decide the order
(the online strategy refits its estimates first), evolve the information and
then the price under the true dynamics, append a blotter row. The final
period always buys the remainder, so every episode conserves shares exactly.

Monte Carlo studies use common random numbers: simulation i draws ONE noise
path from substream_seed(base_seed, i) and replays it identically for every
strategy in the set, which removes the shared noise from the strategy
comparison. Everything is deterministic given (n_sims, base_seed, params,
mandate).

Per-share improvement conventions: a RunResult compares an episode's actual
cost against that strategy's own ex-ante expected cost, while the Monte Carlo
summary measures every strategy against the common uniform-split expected
cost so the cross-strategy ordering is meaningful.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .estimation import ObservationHistory, ParameterEstimates, estimate_all
from .market import (ExecutionMandate, MarketParams, MarketState, NoisePath,
                     generate_noise_path, info_step, price_step, substream_seed)
from .strategies import CoefficientSchedule, decide_order, solve_coefficients
from .valuation import informed_expected_cost, naive_expected_cost

__all__ = [
    "PeriodRecord",
    "RunResult",
    "StrategyStats",
    "MonteCarloSummary",
    "ConvergenceSummary",
    "run_episode",
    "per_share_improvement",
    "run_monte_carlo",
    "summarize_convergence",
    "ESTIMATE_FIELDS",
]

ESTIMATE_FIELDS = ("theta_hat", "gamma_hat", "rho_hat",
                   "sigma_eps_sq_hat", "sigma_eta_sq_hat")


@dataclass(frozen=True)
class PeriodRecord:
    """One blotter row. Row 0 is the pre-trade state (nothing bought,
    everything remaining, zero cost)."""

    period: int
    price: float
    shares_bought: float
    shares_remaining: float
    market_information: float
    accumulated_cost: float


@dataclass
class RunResult:
    """A finished episode: T+1 blotter rows plus the cost summary."""

    blotter: list[PeriodRecord]
    actual_cost: float
    expected_cost: float
    improvement_per_share: float
    strategy_tag: str
    seed: int
    noise_digest: str
    estimates_log: list[ParameterEstimates] | None = None


def run_episode(strategy_kind: str, params: MarketParams,
                mandate: ExecutionMandate, noise_path: NoisePath,
                true_params: MarketParams | None = None,
                schedule: CoefficientSchedule | None = None,
                clamp_nonneg_orders: bool = False,
                ar_expected_cost_from_estimates: bool = False) -> RunResult:
    """Run one episode of the given strategy.

    `params` are the parameters the strategy believes (the informed schedule
    is built from them); the market itself evolves under `true_params`, which
    defaults to the same object. The online strategy starts with an empty
    history and refits after every period.

    With clamp_nonneg_orders, interior orders are floored at zero and the
    final period still takes the exact remainder.

    ar_expected_cost_from_estimates switches the online strategy's reported
    expected cost from the uniform-split benchmark to an informed-style value
    built from its final estimates (used only when those are fully valid).
    """
    T = mandate.horizon
    if noise_path.horizon != T:
        raise ValueError(f"noise path length {noise_path.horizon} != horizon {T}")
    truth = true_params if true_params is not None else params
    if strategy_kind == "informed" and schedule is None:
        schedule = solve_coefficients(params, T)

    is_ar = strategy_kind == "ar"
    history = ObservationHistory(x0=0.0) if is_ar else None
    estimates: ParameterEstimates | None = None
    estimates_log: list[ParameterEstimates] | None = [] if is_ar else None

    price = mandate.p0
    x = 0.0
    s = mandate.s0
    cost = 0.0
    blotter = [PeriodRecord(0, price, 0.0, s, 0.0, 0.0)]

    for t in range(1, T + 1):
        state = MarketState(t=t, price=price, info=x, shares_remaining=s)
        decision = decide_order(strategy_kind, state, T,
                                schedule=schedule, estimates=estimates)
        order = decision.order
        if clamp_nonneg_orders and t < T and order < 0.0:
            order = 0.0
        x_new = info_step(x, truth.rho, noise_path.eta[t - 1])
        price_new = price_step(price, order, x_new, truth.theta, truth.gamma,
                               noise_path.eps[t - 1])
        cost += price_new * order
        s_new = s - order
        blotter.append(PeriodRecord(t, price_new, order, s_new, x_new, cost))
        if is_ar:
            history.append(price_new - price, order, x_new)
            estimates = estimate_all(history, prior=estimates)
            estimates_log.append(estimates)
        price, x, s = price_new, x_new, s_new

    expected = _expected_cost_for(strategy_kind, params, truth, mandate, schedule,
                                  estimates if ar_expected_cost_from_estimates else None)
    return RunResult(
        blotter=blotter,
        actual_cost=cost,
        expected_cost=expected,
        improvement_per_share=per_share_improvement(expected, cost, mandate.s0),
        strategy_tag=strategy_kind,
        seed=noise_path.seed,
        noise_digest=noise_path.digest(),
        estimates_log=estimates_log,
    )


def _expected_cost_for(strategy_kind, params, truth, mandate, schedule,
                       final_estimates) -> float:
    T = mandate.horizon
    if strategy_kind == "informed":
        return informed_expected_cost(mandate.s0, mandate.p0, 0.0, 1, schedule)
    if strategy_kind == "ar" and final_estimates is not None:
        est = final_estimates
        usable = (est.impact_valid and est.rho_valid and est.theta_hat > 0.0
                  and math.isfinite(est.sigma_eps_sq_hat)
                  and math.isfinite(est.sigma_eta_sq_hat))
        if usable:
            est_params = MarketParams(est.theta_hat, est.gamma_hat, est.rho_hat,
                                      est.sigma_eps_sq_hat, est.sigma_eta_sq_hat)
            est_schedule = solve_coefficients(est_params, T)
            return informed_expected_cost(mandate.s0, mandate.p0, 0.0, 1, est_schedule)
    # the uniform-split value is the ex-ante benchmark for naive and online runs
    return naive_expected_cost(mandate.s0, mandate.p0, 1, T, truth.theta)


def per_share_improvement(expected_cost: float, actual_cost: float, s0: float) -> float:
    """(expected - actual) / s0: positive when the run beat its benchmark."""
    if s0 <= 0.0:
        raise ValueError(f"s0: must be > 0 (got {s0})")
    return (expected_cost - actual_cost) / s0


@dataclass
class StrategyStats:
    """Cross-simulation statistics for one strategy.

    Improvements are measured against the common uniform-split expected cost.
    mean_improvement_periodwise is the alternative reading of the same metric:
    the per-period benchmark-minus-actual accumulated cost gap per share,
    averaged over periods and then simulations.
    """

    mean_improvement: float
    sd_improvement: float
    mean_improvement_periodwise: float
    mean_order_size: np.ndarray          # (T,)
    accumulated_cost_variance: np.ndarray  # (T,)
    per_sim_actual_cost: np.ndarray      # (n_sims,)
    per_sim_improvement: np.ndarray      # (n_sims,)
    noise_digests: list[str] = field(default_factory=list)


@dataclass
class MonteCarloSummary:
    """Paired-noise study results for a set of strategies."""

    n_sims: int
    base_seed: int
    strategies: tuple[str, ...]
    benchmark_expected_cost: float
    stats: dict[str, StrategyStats]


def run_monte_carlo(n_sims: int, strategy_set, params: MarketParams,
                    mandate: ExecutionMandate, base_seed: int,
                    clamp_nonneg_orders: bool = False) -> MonteCarloSummary:
    """Run n_sims paired episodes of every strategy in strategy_set.

    Simulation i draws its noise path from substream_seed(base_seed, i) and
    every strategy consumes that same path object, so comparisons are under
    common random numbers. Results are reduced in simulation-index order and
    are bit-identical for a fixed (n_sims, base_seed, params, mandate).
    """
    if n_sims < 1:
        raise ValueError(f"n_sims: must be >= 1 (got {n_sims})")
    strategies = tuple(dict.fromkeys(strategy_set))
    T = mandate.horizon
    schedule = solve_coefficients(params, T) if "informed" in strategies else None
    benchmark = naive_expected_cost(mandate.s0, mandate.p0, 1, T, params.theta)

    actual = {s: np.empty(n_sims) for s in strategies}
    orders = {s: np.empty((n_sims, T)) for s in strategies}
    cum_cost = {s: np.empty((n_sims, T)) for s in strategies}
    digests = {s: [] for s in strategies}

    # expected accumulated cost of the unperturbed uniform split, per period
    per = mandate.s0 / T
    bench_cum = np.cumsum([(mandate.p0 + params.theta * per * t) * per
                           for t in range(1, T + 1)])

    for i in range(n_sims):
        path = generate_noise_path(substream_seed(base_seed, i), T,
                                   params.sigma_eps_sq, params.sigma_eta_sq)
        for strat in strategies:
            res = run_episode(strat, params, mandate, path, schedule=schedule,
                              clamp_nonneg_orders=clamp_nonneg_orders)
            actual[strat][i] = res.actual_cost
            orders[strat][i] = [row.shares_bought for row in res.blotter[1:]]
            cum_cost[strat][i] = [row.accumulated_cost for row in res.blotter[1:]]
            digests[strat].append(res.noise_digest)

    stats = {}
    for strat in strategies:
        imp = (benchmark - actual[strat]) / mandate.s0
        periodwise = np.mean((bench_cum - cum_cost[strat]) / mandate.s0, axis=1)
        stats[strat] = StrategyStats(
            mean_improvement=float(np.mean(imp)),
            sd_improvement=float(np.std(imp, ddof=1)) if n_sims > 1 else 0.0,
            mean_improvement_periodwise=float(np.mean(periodwise)),
            mean_order_size=np.mean(orders[strat], axis=0),
            accumulated_cost_variance=(np.var(cum_cost[strat], axis=0, ddof=1)
                                       if n_sims > 1 else np.zeros(T)),
            per_sim_actual_cost=actual[strat],
            per_sim_improvement=imp,
            noise_digests=digests[strat],
        )
    return MonteCarloSummary(n_sims=n_sims, base_seed=int(base_seed),
                             strategies=strategies,
                             benchmark_expected_cost=benchmark, stats=stats)


@dataclass
class ConvergenceSummary:
    """Per-period cross-simulation mean and spread of the five estimates."""

    periods: np.ndarray                      # 1..T
    mean: dict[str, np.ndarray]              # field -> (T,)
    sd: dict[str, np.ndarray]                # field -> (T,)
    n_episodes: int


def summarize_convergence(episodes) -> ConvergenceSummary:
    """Aggregate the estimate trajectories of online-strategy episodes.

    Periods where a value was never fitted are NaN and are skipped by the
    mean/spread; the spread uses the population convention so a single
    episode yields an identically zero spread series.
    """
    episodes = list(episodes)
    if not episodes:
        raise ValueError("episodes: need at least one episode")
    for ep in episodes:
        if ep.estimates_log is None:
            raise ValueError("episodes must come from the 'ar' strategy "
                             "(estimates_log missing)")
    T = len(episodes[0].estimates_log)
    mean = {}
    sd = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for name in ESTIMATE_FIELDS:
            values = np.array([[getattr(est, name) for est in ep.estimates_log]
                               for ep in episodes])
            mean[name] = np.nanmean(values, axis=0)
            sd[name] = np.nanstd(values, axis=0)
    return ConvergenceSummary(periods=np.arange(1, T + 1), mean=mean, sd=sd,
                              n_episodes=len(episodes))
