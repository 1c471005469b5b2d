import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfafusion.predictors import DEFAULT_MODELS, ForecastConfig, baseline_predict, forecast_next

NAIVE = ForecastConfig("naive")


def test_one_step_examples():
    assert forecast_next([1, 2, 3], NAIVE) == 3
    # seed 2, then 0.5 * 4 + 0.5 * 2
    assert forecast_next([2, 4], ForecastConfig("ema", alpha=0.5)) == 3
    assert forecast_next([1, 2, 3, 4], ForecastConfig("ar_ols", lags=1)) == pytest.approx(5, abs=1e-9)


def test_expanding_window_targets_trailing_days():
    series = baseline_predict([1, 2, 3, 99], NAIVE, 1)
    np.testing.assert_array_equal(series.values, [3])
    np.testing.assert_array_equal(baseline_predict([1, 2, 3, 4, 5], NAIVE, 3).values, [2, 3, 4])


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("start, step", [(3.0, 2.5), (0.5, -0.01), (120.0, 0.75)])
def test_ar_continues_linear_series(p, start, step):
    y = start + step * np.arange(30)
    preds = baseline_predict(y, ForecastConfig("ar_ols", lags=p), 10).values
    np.testing.assert_allclose(preds, y[-10:], rtol=0, atol=1e-9)


def test_ar_singular_falls_back_to_naive(caplog):
    assert forecast_next([4, 4, 4, 4], ForecastConfig("ar_ols", lags=1)) == 4
    assert "constant window" in caplog.text


def test_config_and_history_errors():
    with pytest.raises(ValueError):
        ForecastConfig("ema", alpha=0)
    with pytest.raises(ValueError):
        ForecastConfig("ar_ols", lags=0)
    with pytest.raises(ValueError):
        ForecastConfig("arima")
    with pytest.raises(ValueError):
        baseline_predict([1, 2, 3], ForecastConfig("ar_ols", lags=3), 1)
    with pytest.raises(ValueError):
        baseline_predict([1, 2, 3], NAIVE, 0)


def test_default_models():
    assert [m.name for m in DEFAULT_MODELS] == ["naive", "ema0.3", "ema0.7", "ar1", "ar3"]


series = st.lists(st.floats(1, 1000), min_size=10, max_size=40)


@given(series, st.floats(0.05, 1.0))
def test_running_ema_matches_refit(history, alpha):
    cfg = ForecastConfig("ema", alpha=alpha)
    got = baseline_predict(history, cfg, 4).values
    want = [forecast_next(history[:d], cfg) for d in range(len(history) - 4, len(history))]
    np.testing.assert_allclose(got, want, rtol=1e-12)


@given(series)
def test_naive_equals_ema_with_alpha_one(history):
    a = baseline_predict(history, NAIVE, 5).values
    b = baseline_predict(history, ForecastConfig("ema", alpha=1.0), 5).values
    np.testing.assert_array_equal(a, b)


@given(series, st.sampled_from(DEFAULT_MODELS), st.floats(-500, 500))
def test_no_lookahead(history, cfg, bump):
    history = np.array(history)
    base = baseline_predict(history, cfg, 5).values
    first = len(history) - 5
    for k in range(5):
        d = first + k
        changed = history.copy()
        changed[d:] += bump
        assert baseline_predict(changed, cfg, 5).values[k] == base[k]
