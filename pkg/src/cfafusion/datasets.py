"""Synthetic price series for demos and tests."""

from __future__ import annotations

import numpy as np
import pandas as pd

from .ingestion import AlignedTable


def geometric_random_walk(
    n_days: int = 300,
    seed: int = 0,
    start_price: float = 100.0,
    drift: float = 0.0,
    volatility: float = 0.02,
    start_date: str = "2020-03-11",
) -> AlignedTable:
    """Daily prices ``p[t] = p[t-1] * exp(drift + volatility * z[t])`` in a ``price`` column."""
    rng = np.random.default_rng(seed)
    steps = drift + volatility * rng.standard_normal(n_days - 1)
    prices = start_price * np.exp(np.concatenate([[0.0], np.cumsum(steps)]))
    dates = pd.date_range(start_date, periods=n_days, freq="D")
    return AlignedTable(dates, {"price": prices})
