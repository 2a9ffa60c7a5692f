import math

import numpy as np
import pytest

import specreg


def test_periodogram_of_alternating_series():
    f, p = specreg.periodogram(np.array([1.0, 0.0, -1.0, 0.0]))
    assert f.shape == (1,)
    assert f[0] == pytest.approx(math.pi / 2)
    assert p[0] == pytest.approx(1.0 / (2.0 * math.pi))


def test_scaling_factor():
    assert specreg.ar2_scaling_factor(0.5, -0.3) == pytest.approx(1.1357, abs=1e-4)


def test_simulate_reconstructs_response():
    d = specreg.simulate("sinusoidal", "arma11", T=80, horizon=3, seed=4)
    assert d["X"].shape == (80, 3)
    assert d["X_future"].shape == (3, 3)
    full = np.vstack([d["X"], d["X_future"]]) @ d["beta"] + d["sigma"] * d["e"]
    np.testing.assert_allclose(full, np.concatenate([d["y"], d["y_future"]]), rtol=1e-13, atol=1e-13)
    assert specreg.true_log_spectrum("arch1", 80).shape == (39,)


def test_fit_returns_draws_and_forecasts():
    d = specreg.simulate(T=60, horizon=2, seed=3)
    out = specreg.fit(d["y"], d["X"], d["X_future"], model="btv", chains=1, iterations=80, retain=20, seed=2)
    assert out["beta"].shape == (20, 3)
    assert out["theta"].shape == (20, 29)
    assert out["forecasts"].shape == (2,)
    assert np.all(np.isfinite(out["forecasts"]))
    again = specreg.fit(d["y"], d["X"], d["X_future"], model="btv", chains=1, iterations=80, retain=20, seed=2)
    np.testing.assert_array_equal(out["beta"], again["beta"])


def test_baseline_ols_is_exact_on_noiseless_data():
    X = np.column_stack([np.ones(20), np.linspace(-1.0, 1.0, 20)])
    y = X @ np.array([0.1, 0.5])
    beta, f = specreg.forecast_baseline("OLS", y, X, X[:2])
    np.testing.assert_allclose(beta, [0.1, 0.5], atol=1e-10)
    np.testing.assert_allclose(f, y[:2], atol=1e-10)


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        specreg.simulate(T=10)
    with pytest.raises(specreg.InvalidInput):
        specreg.forecast_baseline("GARCH", np.zeros(5), np.ones((5, 1)), np.ones((1, 1)))


def test_evaluate_synthetic_random_walk_row():
    r = specreg.evaluate_synthetic(length=120, window=100, origins=2, horizons=[1, 2], models=["RW", "OLS"])
    assert r["models"] == ["RW", "OLS"]
    assert np.all(r["rwr"][0] == 0.0)
    assert np.all(r["rmspe"] > 0.0)
