"""Cognitive diversity between scoring systems and per-system diversity strength."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from os import PathLike
from typing import Sequence

import numpy as np

from .scoring import ScoringSystem, rsc_function

DIVERSITY_STRENGTH = "diversity_strength"
PERFORMANCE_STRENGTH = "performance_strength"


@dataclass(frozen=True, eq=False)
class StrengthVector:
    """Per-system fusion weights, either diversity or performance strengths."""

    values: np.ndarray
    kind: str = DIVERSITY_STRENGTH
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("strengths must be a flat vector")
        if self.kind not in (DIVERSITY_STRENGTH, PERFORMANCE_STRENGTH):
            raise ValueError(f"unknown strength kind {self.kind!r}")
        if self.kind == DIVERSITY_STRENGTH and np.any(values < 0):
            raise ValueError("diversity strengths are non-negative")
        if self.labels is not None and len(self.labels) != values.size:
            raise ValueError("one label per strength value")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True, eq=False)
class DiversityMatrix:
    """Symmetric matrix of pairwise cognitive diversities."""

    labels: tuple[str, ...]
    values: np.ndarray

    def to_csv(self, path: str | PathLike) -> None:
        """Write the matrix with a label header row and column (9 significant digits)."""
        with open(path, "w", newline="", encoding="utf-8") as fh:
            write_matrix_csv(fh, self)

    def strengths(self) -> StrengthVector:
        """Diversity strength of every system in the matrix."""
        return StrengthVector(_mean_off_diagonal(self.values), DIVERSITY_STRENGTH, self.labels)


def write_matrix_csv(fh, matrix: DiversityMatrix) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["system", *matrix.labels])
    for label, row in zip(matrix.labels, matrix.values):
        writer.writerow([label, *(f"{v:.9g}" for v in row)])


def _check_same_items(a: ScoringSystem, b: ScoringSystem) -> None:
    if not a.item_set.same_as(b.item_set):
        raise ValueError(
            f"systems {a.label!r} and {b.label!r} are not defined on the same item set"
        )


def rsc_distance(fa: np.ndarray, fb: np.ndarray) -> float:
    """Root-mean-square distance between two RSC functions."""
    return float(np.sqrt(np.mean((fa - fb) ** 2)))


def cognitive_diversity(a: ScoringSystem, b: ScoringSystem) -> float:
    """Cognitive diversity CD(A, B).

    The root-mean-square difference of the two RSC functions over all ``n``
    rank positions. It depends on the score distributions only, not on which
    item holds which score.
    """
    _check_same_items(a, b)
    return rsc_distance(rsc_function(a), rsc_function(b))


def _check_systems(systems: Sequence[ScoringSystem]) -> None:
    if len(systems) < 2:
        raise ValueError("diversity needs at least two scoring systems")
    for other in systems[1:]:
        _check_same_items(systems[0], other)


def diversity_matrix(systems: Sequence[ScoringSystem]) -> DiversityMatrix:
    """All pairwise cognitive diversities; zero diagonal."""
    _check_systems(systems)
    curves = np.stack([rsc_function(s) for s in systems])
    t = len(systems)
    values = np.zeros((t, t))
    for j in range(t):
        for k in range(j + 1, t):
            values[j, k] = values[k, j] = rsc_distance(curves[j], curves[k])
    return DiversityMatrix(tuple(s.label for s in systems), values)


def _mean_off_diagonal(values: np.ndarray) -> np.ndarray:
    t = values.shape[0]
    if t < 2:
        raise ValueError("diversity strength is undefined for fewer than two systems")
    return (values.sum(axis=1) - np.diag(values)) / (t - 1)


def diversity_strength(systems: Sequence[ScoringSystem], j: int) -> float:
    """Mean cognitive diversity between system ``j`` and every other system."""
    _check_systems(systems)
    if not -len(systems) <= j < len(systems):
        raise IndexError(f"system index {j} out of range")
    total = sum(
        cognitive_diversity(systems[j], other)
        for k, other in enumerate(systems)
        if k != j % len(systems)
    )
    return total / (len(systems) - 1)


def diversity_strengths(systems: Sequence[ScoringSystem]) -> StrengthVector:
    return diversity_matrix(systems).strengths()


def group_strengths(matrix: np.ndarray, members: Sequence[int]) -> np.ndarray:
    """Diversity strengths restricted to ``members`` of a larger matrix."""
    idx = np.asarray(members)
    return _mean_off_diagonal(matrix[np.ix_(idx, idx)])
