import math

import numpy as np
import pytest

from bestexec import (ExecutionMandate, MarketParams, NoisePath,
                      generate_noise_path, info_step, price_step,
                      stationary_info_component_std, substream_seed)


def test_zero_variance_yields_zero_shocks():
    path = generate_noise_path(7, 20, 0.0, 0.0)
    assert np.all(path.eps == 0.0)
    assert np.all(path.eta == 0.0)


def test_generation_is_bit_identical():
    a = generate_noise_path(7, 50, 0.125 ** 2, 0.001)
    b = generate_noise_path(7, 50, 0.125 ** 2, 0.001)
    assert np.array_equal(a.eps, b.eps)
    assert np.array_equal(a.eta, b.eta)
    assert a.digest() == b.digest()


def test_substreams_are_distinct():
    assert substream_seed(0, 0) != substream_seed(0, 1)
    assert substream_seed(0, 0) != substream_seed(1, 0)
    a = generate_noise_path(substream_seed(0, 0), 20, 0.01, 0.01)
    b = generate_noise_path(substream_seed(0, 1), 20, 0.01, 0.01)
    assert not np.array_equal(a.eps, b.eps)


def test_noise_path_arrays_are_read_only():
    path = generate_noise_path(3, 10, 0.01, 0.01)
    with pytest.raises(ValueError):
        path.eps[0] = 1.0


def test_sample_moments_large_sample():
    path = generate_noise_path(11, 10 ** 6, 0.125 ** 2, 0.001)
    assert abs(path.eps.std() - 0.125) / 0.125 < 0.01
    assert abs(path.eps.var() - 0.125 ** 2) / 0.125 ** 2 < 0.01
    assert abs(path.eps.mean()) < 4 * 0.125 / 1e3
    assert abs(path.eta.var() - 0.001) / 0.001 < 0.01
    assert abs(path.eta.mean()) < 4 * math.sqrt(0.001) / 1e3


def test_info_step_values():
    # first information value with zero start
    assert info_step(0.0, 0.5, 0.06213838) == pytest.approx(0.06213838, abs=1e-12)
    # memoryless when rho = 0
    assert info_step(123.4, 0.0, 0.7) == 0.7
    # second step back-solved from consecutive information values
    assert info_step(0.06213838, 0.5, 0.00581181) == pytest.approx(0.03688100, abs=1e-8)


def test_price_step_values():
    assert price_step(50.0, 5000.0, 0.0, 5e-5, 5.0, 0.0) == pytest.approx(50.25, rel=1e-12)
    assert price_step(77.7, 0.0, 0.0, 5e-5, 5.0, 0.0) == 77.7
    # shock back-solved from the first row of the uniform-split example blotter
    assert price_step(50.0, 5000.0, 0.0, 5e-5, 0.0, -0.07006) == pytest.approx(50.17994, abs=1e-9)


def test_price_impact_is_additive_in_order_size():
    rng = np.random.default_rng(5)
    for _ in range(200):
        p, b1, b2, x = rng.uniform(-100, 100, 4)
        theta, gamma, eps = rng.uniform(-1, 1, 3)
        joint = price_step(p, b1 + b2, x, theta, gamma, eps)
        split = price_step(price_step(p, b1, 0.0, theta, gamma, 0.0),
                           b2, x, theta, gamma, eps)
        assert joint == pytest.approx(split, rel=1e-9, abs=1e-9)


def test_ar1_stationary_variance():
    rho, s2h = 0.7, 0.001
    path = generate_noise_path(13, 10 ** 5, 0.0, s2h)
    x = 0.0
    xs = np.empty(path.horizon)
    for i in range(path.horizon):
        x = info_step(x, rho, path.eta[i])
        xs[i] = x
    target = s2h / (1 - rho ** 2)
    assert abs(xs.var() - target) / target < 0.05


def test_stationary_info_component_std():
    assert stationary_info_component_std(5.0, 0.5, 0.001) == pytest.approx(0.1826, abs=0.0005)
    assert stationary_info_component_std(0.0, 0.9, 0.01) == 0.0
    assert stationary_info_component_std(3.0, 0.0, 0.04) == pytest.approx(3.0 * 0.2, rel=1e-12)
    with pytest.raises(ValueError):
        stationary_info_component_std(5.0, 1.0, 0.001)


def test_param_validation():
    with pytest.raises(ValueError, match="rho"):
        MarketParams(5e-5, 5.0, 1.0, 0.01, 0.001)
    with pytest.raises(ValueError, match="sigma_eps_sq"):
        MarketParams(5e-5, 5.0, 0.5, -0.01, 0.001)
    with pytest.raises(ValueError, match="sigma_eta_sq"):
        MarketParams(5e-5, 5.0, 0.5, 0.01, -0.001)
    with pytest.raises(ValueError, match="s0"):
        ExecutionMandate(0.0, 50.0, 20)
    with pytest.raises(ValueError, match="p0"):
        ExecutionMandate(1e5, -1.0, 20)
    with pytest.raises(ValueError, match="horizon"):
        ExecutionMandate(1e5, 50.0, 0)
    with pytest.raises(ValueError):
        NoisePath(eps=np.zeros(3), eta=np.zeros(4), seed=0)


def test_generate_noise_path_validation():
    with pytest.raises(ValueError):
        generate_noise_path(0, 0, 0.01, 0.01)
    with pytest.raises(ValueError):
        generate_noise_path(0, 10, -0.01, 0.01)
