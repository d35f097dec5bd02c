"""Market dynamics: exogenous noise, the AR(1) information process, and the
additive permanent price impact law.

Price and information evolve as

    P_t = P_{t-1} + theta * B_t + gamma * X_t + eps_t
    X_t = rho * X_{t-1} + eta_t

with eps_t ~ N(0, sigma_eps_sq) and eta_t ~ N(0, sigma_eta_sq) independent.
Setting gamma = 0 recovers the information-free impact law.

All functions here are pure and all value types are immutable, so they are
safe to share between concurrent workers. Noise generation is counter-based
(Philox keyed through SHA-256), so a seed reproduces the identical path
bit-for-bit on any platform, and substreams derived from (seed, index) are
independent.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MarketParams",
    "ExecutionMandate",
    "NoisePath",
    "MarketState",
    "substream_seed",
    "generate_noise_path",
    "info_step",
    "price_step",
    "stationary_info_component_std",
]


@dataclass(frozen=True)
class MarketParams:
    """True model constants.

    theta         price impact per share traded (currency / share^2)
    gamma         price impact per unit of information (currency / info unit)
    rho           AR(1) coefficient of the information process, |rho| < 1
    sigma_eps_sq  variance of the price shock per period (currency^2)
    sigma_eta_sq  variance of the information shock per period
    """

    theta: float
    gamma: float
    rho: float
    sigma_eps_sq: float
    sigma_eta_sq: float

    def __post_init__(self):
        if not abs(self.rho) < 1.0:
            raise ValueError(f"rho: |rho| must be < 1 (got {self.rho})")
        if self.sigma_eps_sq < 0.0:
            raise ValueError(f"sigma_eps_sq: must be >= 0 (got {self.sigma_eps_sq})")
        if self.sigma_eta_sq < 0.0:
            raise ValueError(f"sigma_eta_sq: must be >= 0 (got {self.sigma_eta_sq})")


@dataclass(frozen=True)
class ExecutionMandate:
    """The task: acquire s0 shares over `horizon` periods starting at price p0."""

    s0: float
    p0: float
    horizon: int

    def __post_init__(self):
        if self.s0 <= 0.0:
            raise ValueError(f"s0: must be > 0 (got {self.s0})")
        if self.p0 <= 0.0:
            raise ValueError(f"p0: must be > 0 (got {self.p0})")
        if self.horizon < 1:
            raise ValueError(f"horizon: must be >= 1 (got {self.horizon})")


@dataclass(frozen=True)
class NoisePath:
    """One realization of the exogenous shocks, periods 1..T.

    eps[t-1] / eta[t-1] hold the period-t shocks (shocks are 1-based to match
    blotter period numbering; period 0 is the pre-trade state). Arrays are
    read-only; regenerating from the same seed reproduces them bit-for-bit.
    """

    eps: np.ndarray
    eta: np.ndarray
    seed: int

    def __post_init__(self):
        if len(self.eps) != len(self.eta):
            raise ValueError("eps and eta must have equal length")
        self.eps.flags.writeable = False
        self.eta.flags.writeable = False

    @property
    def horizon(self) -> int:
        return len(self.eps)

    def digest(self) -> str:
        """SHA-256 of the raw shock bytes; equal digests mean identical paths."""
        h = hashlib.sha256()
        h.update(self.eps.tobytes())
        h.update(self.eta.tobytes())
        return h.hexdigest()


@dataclass(frozen=True)
class MarketState:
    """Snapshot at the start of period t: last price, last observed
    information value, and shares still to buy."""

    t: int
    price: float
    info: float
    shares_remaining: float


def substream_seed(seed: int, index: int, tag: str = "episode") -> int:
    """Derive an independent 64-bit substream seed from (seed, index, tag).

    SHA-256 keyed derivation keeps substreams decorrelated for any index and
    stable across platforms and processes.
    """
    h = hashlib.sha256()
    h.update(tag.encode("ascii"))
    h.update(int(seed).to_bytes(8, "little", signed=False))
    h.update(int(index).to_bytes(8, "little", signed=False))
    return int.from_bytes(h.digest()[:8], "little")


def generate_noise_path(seed: int, horizon: int,
                        sigma_eps_sq: float, sigma_eta_sq: float) -> NoisePath:
    """Draw T i.i.d. Gaussian shock pairs, deterministically from the seed.

    Algorithm: a Philox counter-based bit generator keyed with
    SHA-256("noise", seed) drives numpy's standard-normal transform; eps is
    drawn first, then eta. Zero variances yield exactly zero sequences.
    """
    if horizon < 1:
        raise ValueError(f"horizon: must be >= 1 (got {horizon})")
    if sigma_eps_sq < 0.0 or sigma_eta_sq < 0.0:
        raise ValueError("variances must be >= 0")
    key = hashlib.sha256(b"noise" + int(seed).to_bytes(8, "little", signed=False)).digest()
    rng = np.random.Generator(np.random.Philox(key=int.from_bytes(key[:16], "little")))
    eps = rng.standard_normal(horizon) * math.sqrt(sigma_eps_sq)
    eta = rng.standard_normal(horizon) * math.sqrt(sigma_eta_sq)
    return NoisePath(eps=eps, eta=eta, seed=int(seed))


def info_step(x_prev: float, rho: float, eta_t: float) -> float:
    """One step of the information process: X_t = rho * X_{t-1} + eta_t."""
    return rho * x_prev + eta_t


def price_step(p_prev: float, order: float, x_t: float,
               theta: float, gamma: float, eps_t: float) -> float:
    """One step of the impact law: P_t = P_{t-1} + theta*B_t + gamma*X_t + eps_t."""
    return p_prev + theta * order + gamma * x_t + eps_t


def stationary_info_component_std(gamma: float, rho: float, sigma_eta_sq: float) -> float:
    """Stationary standard deviation of the price's information component,
    gamma * sigma_eta / sqrt(1 - rho^2). Requires |rho| < 1."""
    if not abs(rho) < 1.0:
        raise ValueError(f"rho: |rho| must be < 1 for a stationary process (got {rho})")
    return gamma * math.sqrt(sigma_eta_sq) / math.sqrt(1.0 - rho * rho)
