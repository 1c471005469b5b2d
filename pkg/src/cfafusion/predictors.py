"""Cheap baseline forecasters evaluated over an expanding window.

The window is anchored at the first observation; the forecast for day ``d``
is fitted on every observation before ``d`` and nothing after.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

logger = logging.getLogger(__name__)

NAIVE = "naive"
EMA = "ema"
AR_OLS = "ar_ols"


@dataclass(frozen=True)
class ForecastConfig:
    kind: str = NAIVE
    alpha: float = 0.5
    lags: int = 1
    label: str | None = None

    def __post_init__(self):
        if self.kind not in (NAIVE, EMA, AR_OLS):
            raise ValueError(f"unknown forecaster {self.kind!r}")
        if self.kind == EMA and not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"ema smoothing factor must be in (0, 1], got {self.alpha}")
        if self.kind == AR_OLS and (int(self.lags) != self.lags or self.lags < 1):
            raise ValueError(f"lag order must be a positive integer, got {self.lags}")

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind == EMA:
            return f"ema{self.alpha:g}"
        if self.kind == AR_OLS:
            return f"ar{self.lags}"
        return NAIVE

    @property
    def min_history(self) -> int:
        return max(2, self.lags + 1) if self.kind == AR_OLS else 2


DEFAULT_MODELS = (
    ForecastConfig(NAIVE),
    ForecastConfig(EMA, alpha=0.3),
    ForecastConfig(EMA, alpha=0.7),
    ForecastConfig(AR_OLS, lags=1),
    ForecastConfig(AR_OLS, lags=3),
)


@dataclass(frozen=True, eq=False)
class ForecastSeries:
    model_label: str
    values: np.ndarray


def _ema(window: np.ndarray, alpha: float) -> float:
    level = window[0]
    for x in window[1:]:
        level = alpha * x + (1.0 - alpha) * level
    return float(level)


def _ar_ols(window: np.ndarray, p: int) -> float:
    # rows: [1, y[t-1], ..., y[t-p]] -> y[t]
    n = window.size
    X = np.column_stack([np.ones(n - p)] + [window[p - k : n - k] for k in range(1, p + 1)])
    y = window[p:]
    if np.all(window == window[0]):
        logger.warning("constant window of %d points leaves the lag-%d regression singular; using the last value", n, p)
        return float(window[-1])
    # minimum-norm least squares: collinear lags (e.g. a linear trend) stay well defined
    beta = np.linalg.lstsq(X, y, rcond=None)[0]
    latest = np.concatenate([[1.0], window[::-1][:p]])
    return float(latest @ beta)


def forecast_next(window: Sequence[float], config: ForecastConfig) -> float:
    """One-step-ahead forecast from all of ``window``.

    >>> forecast_next([1, 2, 3], ForecastConfig("naive"))
    3.0
    """
    window = np.asarray(window, dtype=float)
    if config.kind == NAIVE:
        if window.size < 1:
            raise ValueError("naive forecast needs at least one observation")
        return float(window[-1])
    if window.size < config.min_history:
        raise ValueError(f"{config.name} needs at least {config.min_history} observations, got {window.size}")
    if config.kind == EMA:
        return _ema(window, config.alpha)
    return _ar_ols(window, config.lags)


def baseline_predict(history: Sequence[float], config: ForecastConfig, test_days: int) -> ForecastSeries:
    """Expanding-window forecasts for the last ``test_days`` positions of ``history``.

    The forecast for position ``d`` sees ``history[:d]`` only.
    """
    history = np.asarray(history, dtype=float)
    if test_days < 1:
        raise ValueError("need at least one test day")
    first = history.size - test_days
    if first < config.min_history:
        raise ValueError(
            f"{config.name}: {first} observations before the test period, need {config.min_history}"
        )
    if config.kind == EMA:
        # running level, identical to refitting on every prefix
        level = history[0]
        out = np.empty(test_days)
        for d in range(1, history.size):
            if d >= first:
                out[d - first] = level
            level = config.alpha * history[d] + (1.0 - config.alpha) * level
        return ForecastSeries(config.name, out)
    out = np.array([forecast_next(history[:d], config) for d in range(first, history.size)])
    return ForecastSeries(config.name, out)
