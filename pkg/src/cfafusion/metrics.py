"""Forecast error metrics and the per-system evaluation summary."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from os import PathLike
from typing import Mapping, Sequence

import numpy as np

from .pipeline import ImprovementRecord, Strategy, final_predictions


def _pair(predicted, actual) -> tuple[np.ndarray, np.ndarray]:
    predicted = np.asarray(predicted, dtype=float)
    actual = np.asarray(actual, dtype=float)
    if predicted.size == 0:
        raise ValueError("empty series")
    if predicted.shape != actual.shape:
        raise ValueError(f"length mismatch: {predicted.size} predicted vs {actual.size} actual")
    return predicted, actual


def rmse(predicted: Sequence[float], actual: Sequence[float]) -> float:
    """Root mean squared error, in the units of the data."""
    predicted, actual = _pair(predicted, actual)
    return float(np.sqrt(np.mean((actual - predicted) ** 2)))


def mape(predicted: Sequence[float], actual: Sequence[float]) -> float:
    """Mean absolute percentage error, in percent.

    Zero actual values are rejected rather than skipped, since skipping
    would silently change N.
    """
    predicted, actual = _pair(predicted, actual)
    zeros = np.flatnonzero(actual == 0)
    if zeros.size:
        raise ValueError(f"actual value is zero at index {int(zeros[0])}; MAPE is undefined")
    return float(np.mean(np.abs((actual - predicted) / actual)) * 100.0)


def days_improved(records: Sequence[ImprovementRecord], strategy: Strategy | str) -> int:
    """Number of days on which ``strategy`` picked a group over every individual model."""
    if not records:
        raise ValueError("no improvement records")
    strategy = Strategy(strategy)
    matching = [r for r in records if r.strategy == strategy]
    if not matching:
        raise ValueError(f"no records for strategy {strategy.value!r}")
    return sum(r.improved for r in matching)


@dataclass(frozen=True)
class SystemScore:
    name: str
    kind: str  # "individual", "strategy" or "group"
    rmse: float
    mape: float
    days_improved: int | None = None


@dataclass(frozen=True)
class EvaluationReport:
    rows: tuple[SystemScore, ...]
    total_days: int

    def __post_init__(self):
        for r in self.rows:
            if r.rmse < 0 or r.mape < 0:
                raise ValueError(f"{r.name}: negative error metric")
            if r.days_improved is not None and not 0 <= r.days_improved <= self.total_days:
                raise ValueError(f"{r.name}: improved days out of range")

    def __getitem__(self, name: str) -> SystemScore:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def of_kind(self, kind: str) -> list[SystemScore]:
        return [r for r in self.rows if r.kind == kind]

    def to_csv(self, path: str | PathLike) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["system", "kind", "rmse", "mape", "days_improved", "total_days"])
            for r in self.rows:
                writer.writerow([
                    r.name, r.kind, repr(r.rmse), repr(r.mape),
                    "" if r.days_improved is None else r.days_improved, self.total_days,
                ])

    def to_text(self) -> str:
        """Summary table: base models, then score/rank columns per weighting scheme.

        RMSE and MAPE are rounded to two decimals here only.
        """
        base = self.of_kind("individual")
        strategies = self.of_kind("strategy")
        header_top = ["", *(["Base models"] + [""] * (len(base) - 1) if base else [])]
        header = ["", *(r.name for r in base)]
        for r in strategies:
            weighting, basis = Strategy(r.name).value.split("-")[1].upper(), r.name[:2].upper()
            header_top.append("" if weighting in header_top else weighting)
            header.append(basis)
        days = ["# days", *("-" for _ in base), *(str(r.days_improved) for r in strategies)]
        err = ["RMSE", *(f"{r.rmse:.2f}" for r in (*base, *strategies))]
        pct = ["MAPE", *(f"{r.mape:.2f}%" for r in (*base, *strategies))]
        table = [header_top, header, days, err, pct]
        widths = [max(len(row[i]) for row in table) for i in range(len(header))]
        lines = [" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
        lines.insert(2, "-+-".join("-" * w for w in widths))
        lines.append(f"improved days are counted out of {self.total_days}")
        return "\n".join(lines) + "\n"


def evaluate(
    individual: Mapping[str, Sequence[float]],
    actual: Sequence[float],
    records: Sequence[ImprovementRecord] = (),
    groups: Mapping[str, Sequence[float]] | None = None,
) -> EvaluationReport:
    """Score individual models, each strategy's final forecasts and optionally raw group columns.

    A strategy's final forecast on a day is the column closest to the
    realised price, as chosen by improvement analysis.
    """
    actual = np.asarray(actual, dtype=float)
    rows = [SystemScore(name, "individual", rmse(p, actual), mape(p, actual)) for name, p in individual.items()]
    seen = []
    for r in records:
        if r.strategy not in seen:
            seen.append(r.strategy)
    for strategy in seen:
        pred = final_predictions(records, strategy)
        rows.append(
            SystemScore(strategy.value, "strategy", rmse(pred, actual), mape(pred, actual),
                        days_improved(records, strategy))
        )
    for name, p in (groups or {}).items():
        rows.append(SystemScore(name, "group", rmse(p, actual), mape(p, actual)))
    return EvaluationReport(tuple(rows), int(actual.size))
