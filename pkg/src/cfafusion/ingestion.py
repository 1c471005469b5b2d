"""Loading daily price/feature tables, forward-filling gaps, normalizing and splitting.

Input files are UTF-8 CSV with a header row and an ISO-8601 date column.
Weekend and holiday gaps (missing cells or whole missing days) are
forward-filled from the last observed value.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from os import PathLike
from typing import Sequence

import numpy as np
import pandas as pd

from .scoring import normalize_scores

logger = logging.getLogger(__name__)


class DataError(ValueError):
    """Malformed or unusable input data."""


@dataclass(frozen=True, eq=False)
class AlignedTable:
    """Daily table without gaps: strictly increasing dates, one value per column per date."""

    dates: pd.DatetimeIndex
    columns: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        dates = pd.DatetimeIndex(self.dates)
        if not dates.is_monotonic_increasing or not dates.is_unique:
            raise DataError("dates must be strictly increasing")
        cols = {}
        for name, values in self.columns.items():
            arr = np.asarray(values, dtype=float).copy()
            if arr.shape != (len(dates),):
                raise DataError(f"column {name!r} has {arr.size} values for {len(dates)} dates")
            if np.isnan(arr).any():
                raise DataError(f"column {name!r} has missing values")
            arr.flags.writeable = False
            cols[name] = arr
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "columns", cols)

    def __len__(self) -> int:
        return len(self.dates)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    def slice(self, start: int, stop: int | None = None) -> "AlignedTable":
        return AlignedTable(self.dates[start:stop], {k: v[start:stop] for k, v in self.columns.items()})

    def select(self, names: Sequence[str]) -> "AlignedTable":
        return AlignedTable(self.dates, {k: self.columns[k] for k in names})

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.columns, index=self.dates)
        frame.index.name = "date"
        return frame

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "AlignedTable":
        return cls(pd.DatetimeIndex(frame.index), {str(c): frame[c].to_numpy() for c in frame.columns})


@dataclass(frozen=True)
class SplitSpec:
    """Chronological train/test split: the first ``floor(N * train_fraction)`` rows train."""

    train_fraction: float = 0.8

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train fraction must be in (0, 1), got {self.train_fraction}")

    def boundary(self, n_rows: int) -> int:
        # small slack so that e.g. 0.29 * 100 lands on 29, not 28
        return int(math.floor(n_rows * self.train_fraction + 1e-9))


def load_price_table(
    path: str | PathLike,
    date_column: str = "date",
    value_columns: Sequence[str] | None = None,
) -> AlignedTable:
    """Read a CSV into an :class:`AlignedTable`.

    Rows are sorted by date and reindexed to a daily calendar; empty cells and
    absent days take the last prior value. A leading gap cannot be filled and
    is an error, as are duplicate dates and unparsable cells.
    """
    raw = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    if date_column not in raw.columns:
        raise DataError(f"{path}: no {date_column!r} column in header")
    if value_columns is None:
        value_columns = [c for c in raw.columns if c != date_column]
    missing = [c for c in value_columns if c not in raw.columns]
    if missing:
        raise DataError(f"{path}: header lacks column(s) {', '.join(missing)}")
    if not value_columns:
        raise DataError(f"{path}: no value columns")

    dates = []
    for i, text in enumerate(raw[date_column]):
        try:
            dates.append(pd.Timestamp.fromisoformat(text.strip()).normalize())
        except ValueError:
            # header is line 1
            raise DataError(f"{path}: line {i + 2}, column {date_column!r}: bad date {text!r}") from None
    index = pd.DatetimeIndex(dates)
    dupes = index[index.duplicated()]
    if len(dupes):
        raise DataError(f"{path}: duplicate date {dupes[0].date()}")

    data = {}
    for col in value_columns:
        values = np.empty(len(raw))
        for i, text in enumerate(raw[col]):
            text = text.strip()
            if text == "" or text.lower() in ("na", "nan", "null"):
                values[i] = np.nan
                continue
            try:
                values[i] = float(text)
            except ValueError:
                raise DataError(f"{path}: line {i + 2}, column {col!r}: cannot parse {text!r}") from None
            if not math.isfinite(values[i]):
                raise DataError(f"{path}: line {i + 2}, column {col!r}: non-finite value {text!r}")
        data[col] = values

    frame = pd.DataFrame(data, index=index).sort_index()
    if len(frame) == 0:
        raise DataError(f"{path}: no data rows")
    frame = frame.reindex(pd.date_range(frame.index[0], frame.index[-1], freq="D"))
    for col in value_columns:
        if np.isnan(frame[col].iloc[0]):
            raise DataError(f"{path}: column {col!r} starts with a missing value; nothing to forward-fill from")
    frame = frame.ffill()
    return AlignedTable.from_frame(frame)


def write_table(table: AlignedTable, path: str | PathLike, decimals: int | None = None) -> None:
    """Write a table in the same CSV layout :func:`load_price_table` reads."""
    fmt = "%.17g" if decimals is None else f"%.{decimals}f"
    frame = table.to_frame()
    frame.index = frame.index.strftime("%Y-%m-%d")
    frame.to_csv(path, float_format=fmt, lineterminator="\n")


def split_train_test(table: AlignedTable, train_fraction: float = 0.8) -> tuple[AlignedTable, AlignedTable]:
    """Chronological split into (train, test)."""
    spec = SplitSpec(train_fraction)
    n = len(table)
    cut = spec.boundary(n)
    if cut < 1 or cut >= n:
        raise DataError(f"split of {n} rows at fraction {train_fraction} leaves an empty partition")
    return table.slice(0, cut), table.slice(cut)


def normalize_features(table: AlignedTable, split: SplitSpec | None = None) -> AlignedTable:
    """Min-max scale every column.

    With a ``split`` the min and max come from the training rows only, so
    test rows may fall outside [0, 1]. Without one the whole column is used.
    A constant column maps to 1.0.
    """
    if split is None:
        return AlignedTable(table.dates, {k: normalize_scores(v) for k, v in table.columns.items()})
    cut = split.boundary(len(table))
    if cut < 1:
        raise DataError("training partition is empty")
    out = {}
    for name, values in table.columns.items():
        lo, hi = values[:cut].min(), values[:cut].max()
        if hi == lo:
            logger.warning("column %r is constant on the training rows; mapping it to 1.0", name)
            out[name] = np.ones_like(values)
        else:
            out[name] = (values - lo) / (hi - lo)
    return AlignedTable(table.dates, out)
