"""Scoring systems, rank functions and rank-score characteristic (RSC) functions.

A scoring system assigns every item of a shared item set a score in [0, 1].
Its rank function orders items by descending score (rank 1 is the best item)
and its RSC function lists the scores in rank order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class ItemSet:
    """Ordered collection of unique item identifiers.

    Items can be opaque labels or numeric values such as grid prices.
    """

    items: np.ndarray

    def __post_init__(self):
        items = np.asarray(self.items)
        if items.ndim != 1 or items.size < 1:
            raise ValueError("an item set needs at least one item")
        if np.unique(items).size != items.size:
            raise ValueError("item identifiers must be unique")
        items = items.copy()
        items.flags.writeable = False
        object.__setattr__(self, "items", items)

    @property
    def n(self) -> int:
        return int(self.items.size)

    def __len__(self) -> int:
        return self.n

    def same_as(self, other: "ItemSet") -> bool:
        return self is other or (
            self.n == other.n and bool(np.all(self.items == other.items))
        )


def normalize_scores(raw: Sequence[float]) -> np.ndarray:
    """Min-max normalize raw scores to [0, 1].

    A constant vector maps to all ones, every item being equally top.

    Raises
    ------
    ValueError
        If ``raw`` is empty or holds a non-finite value (the index is named).
    """
    values = np.asarray(raw, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("cannot normalize an empty score list")
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise ValueError(f"non-finite score at index {int(bad[0])}: {values[bad[0]]!r}")
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.ones_like(values)
    out = (values - lo) / (hi - lo)
    # pin the endpoints against rounding
    out[values == lo] = 0.0
    out[values == hi] = 1.0
    return out


@dataclass(frozen=True, eq=False)
class ScoringSystem:
    """A normalized score function over an :class:`ItemSet`."""

    item_set: ItemSet
    scores: np.ndarray
    label: str = "A"
    _ranks: np.ndarray | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=float).copy()
        if scores.shape != (self.item_set.n,):
            raise ValueError(
                f"system {self.label!r}: expected {self.item_set.n} scores, got {scores.size}"
            )
        if not np.all(np.isfinite(scores)):
            raise ValueError(f"system {self.label!r}: scores must be finite")
        if scores.min() < 0.0 or scores.max() > 1.0:
            raise ValueError(f"system {self.label!r}: scores must lie in [0, 1]")
        scores.flags.writeable = False
        object.__setattr__(self, "scores", scores)

    @classmethod
    def from_raw(cls, item_set: ItemSet, raw: Sequence[float], label: str = "A") -> "ScoringSystem":
        """Build a system from unnormalized scores."""
        return cls(item_set, normalize_scores(raw), label)

    @property
    def n(self) -> int:
        return self.item_set.n

    @property
    def ranks(self) -> np.ndarray:
        """Cached rank vector, see :func:`rank_from_scores`."""
        if self._ranks is None:
            object.__setattr__(self, "_ranks", _ranks(self.scores))
        return self._ranks


def _ranks(scores: np.ndarray) -> np.ndarray:
    # stable sort on negated scores: equal scores keep item order
    order = np.argsort(-scores, kind="stable")
    ranks = np.empty(scores.size, dtype=np.int64)
    ranks[order] = np.arange(1, scores.size + 1)
    ranks.flags.writeable = False
    return ranks


def rank_from_scores(system: ScoringSystem) -> np.ndarray:
    """Rank function r_A of a scoring system.

    Higher scores get lower rank numbers. Tied scores are ranked by item
    position, so the result is always a permutation of ``1..n``.

    Examples
    --------
    >>> items = ItemSet(np.array(["a", "b", "c"]))
    >>> rank_from_scores(ScoringSystem(items, [0.2, 0.9, 0.5])).tolist()
    [3, 1, 2]
    """
    return system.ranks


def rsc_function(system: ScoringSystem) -> np.ndarray:
    """RSC function ``f(i) = s(r^-1(i))`` for ranks ``i = 1..n``.

    Returned as a 0-based array: element ``i - 1`` holds the score of the
    item at rank ``i``. The sequence is non-increasing.
    """
    out = np.empty(system.n)
    out[system.ranks - 1] = system.scores
    return out
