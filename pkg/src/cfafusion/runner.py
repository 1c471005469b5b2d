"""End-to-end runs: baseline forecasting, fusion, diversity export and evaluation.

Settings come from :class:`RunConfig`. Defaults are defined once on the
dataclass; a flat ``key = value`` config file overrides them, ``CFA_*``
environment variables override the file and explicit arguments override
everything.
"""

from __future__ import annotations

import dataclasses
import logging
import os
import shutil
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np

from .distribution import DEFAULT_GRID_POINTS, residual_stddev
from .diversity import write_matrix_csv
from .ingestion import (
    AlignedTable,
    DataError,
    SplitSpec,
    load_price_table,
    write_table,
)
from .metrics import EvaluationReport, evaluate
from .pipeline import (
    DEFAULT_STRATEGIES,
    FusionPlan,
    Strategy,
    fuse_series,
    improvement_analysis,
    strategy_table,
)
from .predictors import DEFAULT_MODELS, baseline_predict

logger = logging.getLogger(__name__)

ENV_PREFIX = "CFA_"


@dataclass
class RunConfig:
    market: str | None = None
    predictions: str | None = None
    actuals: str | None = None
    date_column: str = "date"
    price_column: str = "price"
    train_fraction: float = 0.8
    grid_points: int = DEFAULT_GRID_POINTS
    strategies: str = ",".join(s.value for s in DEFAULT_STRATEGIES)
    wcds_scope: str = "group"
    normalization: str = "train"
    performance_weights: str = ""
    emit_diversity: bool = False
    emit_diagnostics: bool = False
    out: str = "cfa_out"
    seed: int | None = None  # reserved; every step is deterministic

    def __post_init__(self):
        if not 0.0 < float(self.train_fraction) < 1.0:
            raise ValueError(f"train_fraction must be in (0, 1), got {self.train_fraction}")
        if int(self.grid_points) < 2:
            raise ValueError("grid_points must be at least 2")
        if self.wcds_scope not in ("group", "full"):
            raise ValueError(f"wcds_scope must be 'group' or 'full', got {self.wcds_scope!r}")
        if self.normalization not in ("train", "global"):
            raise ValueError(f"normalization must be 'train' or 'global', got {self.normalization!r}")
        Strategy.parse(self.strategies)

    @classmethod
    def resolve(
        cls,
        config_file: str | os.PathLike | None = None,
        env: Mapping[str, str] | None = None,
        **overrides,
    ) -> "RunConfig":
        """Layer defaults, config file, environment and explicit overrides."""
        values: dict[str, object] = {}
        if config_file is not None:
            values.update(read_config_file(config_file))
        env = os.environ if env is None else env
        for f in dataclasses.fields(cls):
            key = ENV_PREFIX + f.name.upper()
            if key in env:
                values[f.name] = env[key]
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**{k: _coerce(cls, k, v) for k, v in values.items()})

    def plan(self, labels) -> FusionPlan:
        return FusionPlan(
            tuple(labels),
            Strategy.parse(self.strategies),
            self.wcds_scope,
            parse_weights(self.performance_weights) or None,
        )


_TYPES = {"train_fraction": float, "grid_points": int, "seed": int, "emit_diversity": bool, "emit_diagnostics": bool}


def _coerce(cls, key: str, value):
    names = {f.name for f in dataclasses.fields(cls)}
    if key not in names:
        raise ValueError(f"unknown setting {key!r}")
    kind = _TYPES.get(key)
    if kind is None or not isinstance(value, str):
        return value
    if kind is bool:
        low = value.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off", ""):
            return False
        raise ValueError(f"{key}: expected a boolean, got {value!r}")
    try:
        return kind(value.strip())
    except ValueError:
        raise ValueError(f"{key}: expected {kind.__name__}, got {value!r}") from None


def read_config_file(path) -> dict[str, str]:
    """Parse a flat ``key = value`` file; ``#`` starts a comment and dashes in keys become underscores."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def parse_weights(text: str) -> dict[str, float]:
    """``"a=1.5,b=2"`` -> ``{"a": 1.5, "b": 2.0}``."""
    out = {}
    for item in filter(None, (s.strip() for s in (text or "").split(","))):
        label, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"bad weight {item!r}; expected label=value")
        out[label.strip()] = float(value)
    return out


class _Staging:
    """Collects outputs in a scratch directory and moves them into place only on success."""

    def __init__(self, out: str | os.PathLike):
        self.out = Path(out)

    def __enter__(self) -> Path:
        self.out.mkdir(parents=True, exist_ok=True)
        self.tmp = Path(tempfile.mkdtemp(prefix=".staging-", dir=self.out))
        return self.tmp

    def __exit__(self, exc_type, exc, tb):
        try:
            if exc_type is None:
                for path in sorted(self.tmp.rglob("*")):
                    if path.is_file():
                        target = self.out / path.relative_to(self.tmp)
                        target.parent.mkdir(parents=True, exist_ok=True)
                        os.replace(path, target)
        finally:
            shutil.rmtree(self.tmp, ignore_errors=True)
        return False


def _day(d) -> str:
    return d.strftime("%Y-%m-%d")


def run_predict(config: RunConfig) -> AlignedTable:
    """Forecast the test period with the built-in baselines.

    Writes ``predictions.csv`` (one column per model) and ``actuals.csv``
    covering the test days. The price series is min-max scaled before
    fitting, with statistics from the training rows (``normalization="train"``)
    or the whole series, and forecasts are mapped back to prices.
    """
    if not config.market:
        raise ValueError("predict needs a market table")
    table = load_price_table(config.market, config.date_column, [config.price_column])
    prices = table[config.price_column]
    split = SplitSpec(config.train_fraction)
    cut = split.boundary(len(table))
    if cut < 1 or cut >= len(table):
        raise DataError(f"split of {len(table)} rows at {config.train_fraction} leaves an empty partition")
    ref = prices[:cut] if config.normalization == "train" else prices
    lo, span = ref.min(), ref.max() - ref.min()
    if span == 0:
        raise DataError("price series is constant on the normalization rows")
    scaled = (prices - lo) / span
    test_days = len(table) - cut

    forecasts = {}
    for cfg in DEFAULT_MODELS:
        forecasts[cfg.name] = baseline_predict(scaled, cfg, test_days).values * span + lo
    predictions = AlignedTable(table.dates[cut:], forecasts)
    actuals = AlignedTable(table.dates[cut:], {"price": prices[cut:]})
    with _Staging(config.out) as tmp:
        write_table(predictions, tmp / "predictions.csv")
        write_table(actuals, tmp / "actuals.csv")
    return predictions


def _load_inputs(config: RunConfig) -> tuple[AlignedTable, np.ndarray]:
    if not config.predictions or not config.actuals:
        raise ValueError("a predictions table and an actuals table are required")
    preds = load_price_table(config.predictions, config.date_column)
    actual_table = load_price_table(config.actuals, config.date_column)
    column = config.price_column if config.price_column in actual_table.columns else actual_table.names[0]
    lookup = dict(zip(actual_table.dates, actual_table[column]))
    missing = [d for d in preds.dates if d not in lookup]
    if missing:
        raise DataError(f"{config.actuals}: no actual price for {_day(missing[0])}")
    return preds, np.array([lookup[d] for d in preds.dates])


def model_sigmas(preds: AlignedTable, actual: np.ndarray) -> dict[str, float]:
    sigmas = {}
    for label in preds.names:
        sigma = residual_stddev(preds[label], actual)
        if sigma <= 0:
            raise DataError(f"model {label!r} has zero residual spread; cannot build its distribution")
        sigmas[label] = sigma
    return sigmas


def run_pipeline(config: RunConfig) -> EvaluationReport:
    """Fuse external or baseline forecasts and evaluate them.

    Outputs in ``config.out``: ``table_<strategy>.csv`` (daily forecasts of
    every model and group), ``improvement_<strategy>.csv``, ``sigmas.csv``,
    ``summary.csv`` and ``summary.txt``. Optional per-day diversity matrices
    and distance tables go under ``diversity/`` and ``diagnostics/``.
    """
    preds, actual = _load_inputs(config)
    sigmas = model_sigmas(preds, actual)
    plan = config.plan(preds.names)
    results = fuse_series(preds.columns, sigmas, plan, days=list(preds.dates), grid_points=config.grid_points)
    records = improvement_analysis(results, actual)

    for res in results:
        for strategy, row in res.groups.items():
            for label, price in row.items():
                if not res.lower - 1e-9 <= price <= res.upper + 1e-9:
                    raise AssertionError(f"{_day(res.day)} {strategy.value} {label}: price {price} off the grid")

    individual = {m: np.array([r.individual[m] for r in results]) for m in plan.model_labels}
    report = evaluate(individual, actual, records)

    with _Staging(config.out) as tmp:
        for strategy in plan.strategies:
            frame = strategy_table(results, plan, strategy)
            frame.index = [_day(d) for d in frame.index]
            frame.index.name = "date"
            frame.to_csv(tmp / f"table_{strategy.value}.csv", float_format="%.2f", lineterminator="\n")
            with open(tmp / f"improvement_{strategy.value}.csv", "w", encoding="utf-8") as fh:
                fh.write("date,best_label,best_distance,improved\n")
                for r in records:
                    if r.strategy == strategy:
                        fh.write(f"{_day(r.day)},{r.best_label},{r.best_distance:.2f},{str(r.improved).lower()}\n")
            if config.emit_diagnostics:
                (tmp / "diagnostics").mkdir(exist_ok=True)
                with open(tmp / "diagnostics" / f"distances_{strategy.value}.csv", "w", encoding="utf-8") as fh:
                    fh.write(",".join(["date", *plan.columns]) + "\n")
                    for r in records:
                        if r.strategy == strategy:
                            fh.write(",".join([_day(r.day), *(f"{r.distances[c]:.6f}" for c in plan.columns)]) + "\n")
        with open(tmp / "sigmas.csv", "w", encoding="utf-8") as fh:
            fh.write("model,sigma\n")
            for label, sigma in sigmas.items():
                fh.write(f"{label},{sigma!r}\n")
        if config.emit_diversity:
            _write_diversity(results, tmp / "diversity")
        if config.emit_diagnostics:
            _write_rsc(results, plan, tmp / "diagnostics")
        report.to_csv(tmp / "summary.csv")
        (tmp / "summary.txt").write_text(report.to_text(), encoding="utf-8")
    return report


def _write_diversity(results, folder: Path) -> None:
    folder.mkdir(exist_ok=True)
    with open(folder / "strengths.csv", "w", encoding="utf-8") as fh:
        labels = results[0].diversity.labels
        fh.write(",".join(["date", *labels]) + "\n")
        for res in results:
            fh.write(",".join([_day(res.day), *(f"{v:.9g}" for v in res.strengths.values)]) + "\n")
    for res in results:
        with open(folder / f"{_day(res.day)}.csv", "w", newline="", encoding="utf-8") as fh:
            write_matrix_csv(fh, res.diversity)


def _write_rsc(results, plan: FusionPlan, folder: Path) -> None:
    folder.mkdir(exist_ok=True)
    with open(folder / "grid_bounds.csv", "w", encoding="utf-8") as fh:
        fh.write("date,lower,upper\n")
        for res in results:
            fh.write(f"{_day(res.day)},{res.lower:.6f},{res.upper:.6f}\n")
    for res in results:
        with open(folder / f"rsc_{_day(res.day)}.csv", "w", encoding="utf-8") as fh:
            fh.write(",".join(["rank", *plan.model_labels]) + "\n")
            for i, col in enumerate(res.rsc.T, 1):
                fh.write(",".join([str(i), *(f"{v:.9g}" for v in col)]) + "\n")


def run_diversity(config: RunConfig) -> list:
    """Write one cognitive-diversity matrix per day plus a strengths table."""
    preds, actual = _load_inputs(config)
    sigmas = model_sigmas(preds, actual)
    # AC only: the diversity does not depend on the strategy
    plan = FusionPlan(tuple(preds.names), (Strategy.SC_AC,))
    results = fuse_series(preds.columns, sigmas, plan, days=list(preds.dates), grid_points=config.grid_points)
    with _Staging(config.out) as tmp:
        _write_diversity(results, tmp / "diversity")
    return [r.diversity for r in results]


def run_eval(config: RunConfig) -> EvaluationReport:
    """RMSE and MAPE of every column of a predictions table."""
    preds, actual = _load_inputs(config)
    report = evaluate({m: preds[m] for m in preds.names}, actual)
    with _Staging(config.out) as tmp:
        report.to_csv(tmp / "metrics.csv")
        (tmp / "metrics.txt").write_text(report.to_text(), encoding="utf-8")
    return report
