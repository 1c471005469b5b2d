"""Score and rank combination of scoring systems.

Three weighting schemes are supported: average combination (AC), weighted
combination by diversity strength (WCDS) and weighted combination by
performance (WCP). Score combination takes the weighted mean of scores;
rank combination takes the mean of ranks weighted by ``1 / w``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .diversity import StrengthVector
from .scoring import ItemSet, ScoringSystem

logger = logging.getLogger(__name__)

AC = "AC"
WCDS = "WCDS"
WCP = "WCP"

SCORE = "score"
RANK = "rank"

MAXIMIZE = "maximize"
MINIMIZE = "minimize"


@dataclass(frozen=True)
class WeightScheme:
    """How the systems in a combination are weighted.

    ``weights`` is required for WCDS and WCP and must be absent for AC.
    """

    kind: str = AC
    weights: StrengthVector | None = None

    def __post_init__(self):
        if self.kind not in (AC, WCDS, WCP):
            raise ValueError(f"unknown weight scheme {self.kind!r}")
        if self.kind == AC and self.weights is not None:
            raise ValueError("average combination takes no weights")
        if self.kind != AC and self.weights is None:
            raise ValueError(f"{self.kind} needs a weight vector")

    @classmethod
    def average(cls) -> "WeightScheme":
        return cls(AC)

    @classmethod
    def diversity(cls, weights) -> "WeightScheme":
        if not isinstance(weights, StrengthVector):
            weights = StrengthVector(weights, "diversity_strength")
        return cls(WCDS, weights)

    @classmethod
    def performance(cls, weights) -> "WeightScheme":
        if not isinstance(weights, StrengthVector):
            weights = StrengthVector(weights, "performance_strength")
        return cls(WCP, weights)


@dataclass(frozen=True, eq=False)
class CombinedSystem:
    """Result of fusing several systems over one item set.

    Score-basis values are maximized, rank-basis values minimized.
    """

    item_set: ItemSet
    values: np.ndarray
    basis: str

    @property
    def direction(self) -> str:
        return MAXIMIZE if self.basis == SCORE else MINIMIZE


def _resolve_weights(systems: Sequence[ScoringSystem], scheme: WeightScheme) -> np.ndarray | None:
    """Weight vector for the combination, or None for a plain average."""
    if len(systems) < 2:
        raise ValueError("a combination needs at least two systems")
    first = systems[0]
    for other in systems[1:]:
        if not first.item_set.same_as(other.item_set):
            raise ValueError(
                f"systems {first.label!r} and {other.label!r} are not defined on the same item set"
            )
    if scheme.kind == AC:
        return None
    w = scheme.weights.values
    if w.size != len(systems):
        raise ValueError(f"{w.size} weights given for {len(systems)} systems")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValueError(f"{scheme.kind} weights must be finite and non-negative")
    if scheme.kind == WCDS and np.all(w == 0):
        logger.warning("all diversity strengths are zero; falling back to average combination")
        return None
    if np.any(w == 0):
        raise ValueError(f"{scheme.kind} weights must be strictly positive")
    if np.all(w == w[0]):
        # equal weights are exactly the plain average; avoid rounding that splits rank ties
        return None
    return w


def combine_scores(systems: Sequence[ScoringSystem], scheme: WeightScheme | None = None) -> CombinedSystem:
    """Score combination: per-item (weighted) arithmetic mean of the scores."""
    scheme = scheme or WeightScheme.average()
    w = _resolve_weights(systems, scheme)
    scores = np.stack([s.scores for s in systems])
    if w is None:
        values = scores.mean(axis=0)
    else:
        values = w @ scores / w.sum()
    return CombinedSystem(systems[0].item_set, values, SCORE)


def combine_ranks(systems: Sequence[ScoringSystem], scheme: WeightScheme | None = None) -> CombinedSystem:
    """Rank combination: per-item mean rank, weighted by reciprocal weights.

    Combined values stay real-valued; a lower value is a better item.
    """
    scheme = scheme or WeightScheme.average()
    w = _resolve_weights(systems, scheme)
    ranks = np.stack([s.ranks for s in systems]).astype(float)
    if w is None:
        values = ranks.mean(axis=0)
    else:
        inv = 1.0 / w
        values = inv @ ranks / inv.sum()
    return CombinedSystem(systems[0].item_set, values, RANK)
