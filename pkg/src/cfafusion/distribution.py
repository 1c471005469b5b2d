"""Turning point forecasts into scoring systems over a shared price grid.

Each forecast becomes a normal density centred on the predicted price,
truncated at two standard deviations and sampled on a uniform grid. The
sampled densities are peak-normalized so each model is a scoring system
whose items are candidate prices.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from os import PathLike
from typing import Sequence

import numpy as np

from .scoring import ItemSet, ScoringSystem

logger = logging.getLogger(__name__)

TRUNCATION = 2.0
# slack so that window endpoints used as grid bounds survive rounding
_EDGE_TOL = 1e-12
DEFAULT_GRID_POINTS = 2001


@dataclass(frozen=True)
class PredictionPoint:
    model_label: str
    day: object
    mu: float
    sigma: float

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise ValueError(f"{self.model_label}: predicted price must be finite")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError(f"{self.model_label}: sigma must be positive, got {self.sigma}")

    @property
    def window(self) -> tuple[float, float]:
        return self.mu - TRUNCATION * self.sigma, self.mu + TRUNCATION * self.sigma


@dataclass(frozen=True, eq=False)
class PriceGrid:
    """Uniform grid of candidate prices, both endpoints included."""

    lower: float
    upper: float
    resolution: int

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError("grid lower bound must be non-negative")
        if not self.upper > self.lower:
            raise ValueError(f"empty price range [{self.lower}, {self.upper}]")
        if self.resolution < 2:
            raise ValueError("a price grid needs at least two points")
        object.__setattr__(self, "item_set", ItemSet(np.linspace(self.lower, self.upper, self.resolution)))

    @property
    def points(self) -> np.ndarray:
        return self.item_set.items

    @property
    def spacing(self) -> float:
        return (self.upper - self.lower) / (self.resolution - 1)

    def snap(self, price: float) -> float:
        """Nearest grid price; halfway cases go to the lower price."""
        idx = int(np.argmin(np.abs(self.points - price)))
        return float(self.points[idx])


@dataclass(frozen=True, eq=False)
class DayDistribution:
    """One model's truncated, peak-normalized normal over a day's price grid."""

    model_label: str
    grid: PriceGrid
    scores: np.ndarray
    mu: float
    sigma: float

    @property
    def system(self) -> ScoringSystem:
        return ScoringSystem(self.grid.item_set, self.scores, self.model_label)

    def to_csv(self, path: str | PathLike) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["price", "score"])
            for p, s in zip(self.grid.points, self.scores):
                writer.writerow([f"{p:.6f}", f"{s:.9g}"])


def residual_stddev(predicted: Sequence[float], actual: Sequence[float]) -> float:
    """Population standard deviation (divisor N) of ``actual - predicted``.

    A zero result is returned as is; callers must reject it before expanding.
    """
    predicted = np.asarray(predicted, dtype=float)
    actual = np.asarray(actual, dtype=float)
    if predicted.size == 0:
        raise ValueError("cannot estimate spread from an empty series")
    if predicted.shape != actual.shape:
        raise ValueError(f"length mismatch: {predicted.size} predictions vs {actual.size} actuals")
    return float(np.std(actual - predicted))


def build_price_grid(points: Sequence[PredictionPoint], resolution: int = DEFAULT_GRID_POINTS) -> PriceGrid:
    """Grid spanning the union of all ±2σ windows, clamped at zero."""
    if not points:
        raise ValueError("need at least one prediction to build a grid")
    lower = max(0.0, min(p.window[0] for p in points))
    upper = max(p.window[1] for p in points)
    if upper <= lower:
        raise ValueError(f"price range collapses: upper {upper} <= lower {lower}")
    return PriceGrid(lower, upper, int(resolution))


def expand_to_distribution(point: PredictionPoint, grid: PriceGrid) -> DayDistribution:
    """Sample the truncated normal of ``point`` on ``grid`` and scale the peak to 1.

    Grid prices farther than 2σ from the mean score 0.
    """
    if not point.sigma > 0:
        raise ValueError(f"{point.model_label}: sigma must be positive")
    z = (grid.points - point.mu) / point.sigma
    raw = np.where(np.abs(z) <= TRUNCATION + _EDGE_TOL, np.exp(-0.5 * z * z), 0.0)
    peak = raw.max()
    if peak > 0:
        scores = raw / peak
    else:
        logger.warning(
            "%s: no grid point inside [%.6g, %.6g]; all scores are zero",
            point.model_label, *point.window,
        )
        scores = raw
    return DayDistribution(point.model_label, grid, scores, point.mu, point.sigma)
