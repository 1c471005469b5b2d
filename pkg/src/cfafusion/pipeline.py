"""Day-by-day fusion of model forecasts and improvement analysis.

For every test day each model's forecast is expanded into a scoring system
over a shared price grid. Every subset of two or more models is then fused
under each combination strategy, and the fused system's best grid price is
that subset's forecast for the day. Improvement analysis compares all
individual and group forecasts against the realised price.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np
import pandas as pd

from .combination import (
    AC,
    MAXIMIZE,
    RANK,
    SCORE,
    WCDS,
    WCP,
    CombinedSystem,
    WeightScheme,
    combine_ranks,
    combine_scores,
)
from .diversity import DiversityMatrix, StrengthVector, diversity_matrix, group_strengths
from .distribution import (
    DEFAULT_GRID_POINTS,
    DayDistribution,
    PredictionPoint,
    build_price_grid,
    expand_to_distribution,
)
from .scoring import rsc_function

logger = logging.getLogger(__name__)


class Strategy(str, Enum):
    SC_AC = "sc-ac"
    RC_AC = "rc-ac"
    SC_WCDS = "sc-wcds"
    RC_WCDS = "rc-wcds"
    SC_WCP = "sc-wcp"
    RC_WCP = "rc-wcp"

    @property
    def basis(self) -> str:
        return SCORE if self.value.startswith("sc") else RANK

    @property
    def weighting(self) -> str:
        return {"ac": AC, "wcds": WCDS, "wcp": WCP}[self.value.split("-")[1]]

    @classmethod
    def parse(cls, text: str | Sequence[str]) -> tuple["Strategy", ...]:
        """Parse ``"sc-ac,rc-ac"`` style lists."""
        items = text.split(",") if isinstance(text, str) else text
        try:
            return tuple(cls(s.strip().lower()) for s in items if s.strip())
        except ValueError as exc:
            raise ValueError(f"unknown strategy in {text!r}; choose from {', '.join(s.value for s in cls)}") from exc


DEFAULT_STRATEGIES = (Strategy.SC_AC, Strategy.RC_AC, Strategy.SC_WCDS, Strategy.RC_WCDS)

GROUP_SCOPE = "group"
FULL_SCOPE = "full"


def enumerate_groups(t: int) -> list[tuple[int, ...]]:
    """All subsets of ``range(t)`` with at least two members, by size then lexicographically."""
    if t < 2:
        raise ValueError(f"need at least two models to form a group, got {t}")
    return [g for size in range(2, t + 1) for g in itertools.combinations(range(t), size)]


def group_label(labels: Sequence[str], group: Sequence[int]) -> str:
    return "+".join(sorted(labels[i] for i in group))


@dataclass(frozen=True)
class FusionPlan:
    """Model groups crossed with combination strategies.

    ``wcds_scope`` chooses whether a group's diversity strengths are computed
    among its own members (``"group"``) or taken from all models (``"full"``).
    ``performance`` supplies per-model weights, needed only for WCP strategies.
    """

    model_labels: tuple[str, ...]
    strategies: tuple[Strategy, ...] = DEFAULT_STRATEGIES
    wcds_scope: str = GROUP_SCOPE
    performance: Mapping[str, float] | None = None

    def __post_init__(self):
        labels = tuple(self.model_labels)
        if len(set(labels)) != len(labels):
            raise ValueError("model labels must be unique")
        object.__setattr__(self, "model_labels", labels)
        object.__setattr__(self, "strategies", Strategy.parse(list(self.strategies)))
        if not self.strategies:
            raise ValueError("no combination strategy selected")
        if self.wcds_scope not in (GROUP_SCOPE, FULL_SCOPE):
            raise ValueError(f"wcds scope must be 'group' or 'full', got {self.wcds_scope!r}")
        if any(s.weighting == WCP for s in self.strategies):
            perf = self.performance or {}
            missing = [m for m in labels if m not in perf]
            if missing:
                raise ValueError(f"performance weights missing for {', '.join(missing)}")
            if any(not perf[m] > 0 for m in labels):
                raise ValueError("performance weights must be positive")
        object.__setattr__(self, "groups", tuple(enumerate_groups(len(labels))))

    @property
    def t(self) -> int:
        return len(self.model_labels)

    @property
    def group_labels(self) -> list[str]:
        return [group_label(self.model_labels, g) for g in self.groups]

    @property
    def columns(self) -> list[str]:
        """Individual models first, then the groups."""
        return list(self.model_labels) + self.group_labels

    @property
    def size(self) -> int:
        """Number of fused systems: groups times strategies."""
        return len(self.groups) * len(self.strategies)


def select_price(combined: CombinedSystem) -> float:
    """Best item of a combined system; ties go to the lowest price."""
    values = combined.values
    idx = int(np.argmax(values) if combined.direction == MAXIMIZE else np.argmin(values))
    return float(combined.item_set.items[idx])


@dataclass(frozen=True, eq=False)
class DayFusionResult:
    day: object
    individual: dict[str, float]
    groups: dict[Strategy, dict[str, float]]
    strengths: StrengthVector
    diversity: DiversityMatrix
    lower: float
    upper: float
    rsc: np.ndarray = field(repr=False, default=None)

    def row(self, strategy: Strategy) -> dict[str, float]:
        return {**self.individual, **self.groups[Strategy(strategy)]}


_warned_pair_degeneracy = False


def _note_pair_degeneracy():
    global _warned_pair_degeneracy
    if not _warned_pair_degeneracy:
        logger.info("group-local WCDS weights of a two-model group are equal; it coincides with AC")
        _warned_pair_degeneracy = True


def _scheme(strategy: Strategy, plan: FusionPlan, group: tuple[int, ...], matrix: np.ndarray) -> WeightScheme:
    if strategy.weighting == AC:
        return WeightScheme.average()
    if strategy.weighting == WCP:
        return WeightScheme.performance([plan.performance[plan.model_labels[i]] for i in group])
    if plan.wcds_scope == GROUP_SCOPE:
        if len(group) == 2:
            _note_pair_degeneracy()
        return WeightScheme.diversity(group_strengths(matrix, group))
    full = group_strengths(matrix, range(plan.t))
    return WeightScheme.diversity(full[list(group)])


def fuse_day(distributions: Sequence[DayDistribution], plan: FusionPlan, day=None) -> DayFusionResult:
    """Fuse one day's model distributions under every group and strategy of ``plan``."""
    by_label = {d.model_label: d for d in distributions}
    if len(by_label) != len(distributions) or set(by_label) != set(plan.model_labels):
        raise ValueError(
            f"day {day}: distributions for {sorted(by_label)} do not match plan models {sorted(plan.model_labels)}"
        )
    ordered = [by_label[m] for m in plan.model_labels]
    grid = ordered[0].grid
    for d in ordered[1:]:
        if not d.grid.item_set.same_as(grid.item_set):
            raise ValueError(f"day {day}: {d.model_label} uses a different price grid")

    systems = [d.system for d in ordered]
    div = diversity_matrix(systems)
    individual = {d.model_label: grid.snap(d.mu) for d in ordered}

    groups: dict[Strategy, dict[str, float]] = {}
    for strategy in plan.strategies:
        combine = combine_scores if strategy.basis == SCORE else combine_ranks
        row = {}
        for group, label in zip(plan.groups, plan.group_labels):
            scheme = _scheme(strategy, plan, group, div.values)
            row[label] = select_price(combine([systems[i] for i in group], scheme))
        groups[strategy] = row
    rsc = np.stack([rsc_function(s) for s in systems])
    return DayFusionResult(day, individual, groups, div.strengths(), div, grid.lower, grid.upper, rsc)


def fuse_series(
    predictions: Mapping[str, Sequence[float]],
    sigmas: Mapping[str, float],
    plan: FusionPlan,
    days: Sequence | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> list[DayFusionResult]:
    """Run :func:`fuse_day` over aligned per-model forecast series.

    Each model keeps one spread ``sigmas[label]`` for every day.
    """
    n_days = len(next(iter(predictions.values())))
    days = list(days) if days is not None else list(range(n_days))
    for label in plan.model_labels:
        if label not in predictions:
            raise ValueError(f"no predictions for model {label!r}")
        if len(predictions[label]) != n_days:
            raise ValueError(f"model {label!r} has {len(predictions[label])} predictions, expected {n_days}")
        if not sigmas.get(label, 0) > 0:
            raise ValueError(f"model {label!r} needs a positive spread, got {sigmas.get(label)}")
    results = []
    for i, day in enumerate(days):
        points = [PredictionPoint(m, day, float(predictions[m][i]), float(sigmas[m])) for m in plan.model_labels]
        try:
            grid = build_price_grid(points, grid_points)
        except ValueError as exc:
            raise ValueError(f"day {day}: {exc}") from exc
        dists = [expand_to_distribution(p, grid) for p in points]
        results.append(fuse_day(dists, plan, day))
    return results


def strategy_table(results: Sequence[DayFusionResult], plan: FusionPlan, strategy: Strategy) -> pd.DataFrame:
    """Forecast table for one strategy: one row per day, individual then group columns."""
    rows = [r.row(strategy) for r in results]
    frame = pd.DataFrame(rows, columns=plan.columns, index=[r.day for r in results])
    frame.index.name = "date"
    return frame


@dataclass(frozen=True, eq=False)
class ImprovementRecord:
    day: object
    strategy: Strategy
    best_label: str
    best_price: float
    best_distance: float
    improved: bool
    distances: dict[str, float] = field(repr=False)


def improvement_analysis(
    results: Sequence[DayFusionResult],
    actual: Sequence[float] | Mapping,
    individual_labels: Sequence[str] | None = None,
) -> list[ImprovementRecord]:
    """Per day and strategy, the column closest to the realised price.

    ``actual`` is either a sequence aligned with ``results`` or a mapping from
    day to price. The day counts as improved only if a group is strictly
    closer than every individual model.
    """
    if isinstance(actual, Mapping):
        try:
            truth = [float(actual[r.day]) for r in results]
        except KeyError as exc:
            raise ValueError(f"no actual price for day {exc.args[0]}") from None
    else:
        truth = [float(a) for a in actual]
        if len(truth) != len(results):
            raise ValueError(f"{len(truth)} actual prices for {len(results)} days")
    records = []
    for res, y in zip(results, truth):
        for strategy in res.groups:
            row = res.row(strategy)
            distances = {k: abs(y - v) for k, v in row.items()}
            # columns are individuals first, so min() keeps an individual on ties
            best = min(distances, key=distances.__getitem__)
            records.append(
                ImprovementRecord(
                    res.day,
                    strategy,
                    best,
                    row[best],
                    distances[best],
                    best not in res.individual,
                    distances,
                )
            )
    return records


def final_predictions(records: Sequence[ImprovementRecord], strategy: Strategy) -> np.ndarray:
    """Price of the closest column per day, the strategy's final forecast."""
    strategy = Strategy(strategy)
    return np.array([r.best_price for r in records if r.strategy == strategy])
