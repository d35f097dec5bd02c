"""Best-execution strategies for block orders under additive permanent price
impact with AR(1) market information: simulation, valuation, online
estimation and paired Monte Carlo comparison."""

from .estimation import (COND_LIMIT, RHO_CLAMP, EstimationError,
                         ObservationHistory, ParameterEstimates, estimate_all,
                         fit_impact, fit_rho, fit_variances)
from .market import (ExecutionMandate, MarketParams, MarketState, NoisePath,
                     generate_noise_path, info_step, price_step,
                     stationary_info_component_std, substream_seed)
from .simulation import (ConvergenceSummary, MonteCarloSummary, PeriodRecord,
                         RunResult, StrategyStats, per_share_improvement,
                         run_episode, run_monte_carlo, summarize_convergence)
from .strategies import (STRATEGIES, CoefficientSchedule, OrderDecision,
                         ar_adjustment_factor, decide_order, informed_order,
                         naive_order, solve_coefficients)
from .valuation import (CostForecast, cost_sensitivity, informed_expected_cost,
                        naive_expected_cost)

__version__ = "0.1.0"
