import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfafusion.metrics import EvaluationReport, SystemScore, days_improved, evaluate, mape, rmse
from cfafusion.pipeline import ImprovementRecord, Strategy


def test_rmse_examples():
    assert rmse([1, 2, 3], [1, 2, 3]) == 0.0
    assert rmse([1, 2], [2, 2]) == pytest.approx(math.sqrt(0.5), abs=1e-9)
    assert rmse([1, 2], [2, 2]) == pytest.approx(0.70710678, abs=1e-8)
    assert rmse([0], [3]) == 3.0


def test_mape_examples():
    assert mape([5, 6], [5, 6]) == 0.0
    assert mape([99, 202], [100, 200]) == pytest.approx(1.0, abs=1e-9)
    assert mape([100], [50]) == pytest.approx(100.0, abs=1e-9)


def test_metric_errors():
    with pytest.raises(ValueError):
        rmse([], [])
    with pytest.raises(ValueError):
        rmse([1, 2], [1])
    with pytest.raises(ValueError, match="index 1"):
        mape([1, 2], [1, 0])


pairs = st.integers(1, 40).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(1, 1e5), min_size=n, max_size=n),
        st.lists(st.floats(1, 1e5), min_size=n, max_size=n),
    )
)


@given(pairs, st.floats(0.01, 100), st.randoms())
def test_metric_properties(pair, c, random):
    pred, actual = map(np.array, pair)
    assert mape(pred * c, actual * c) == pytest.approx(mape(pred, actual), rel=1e-9)
    assert rmse(pred * c, actual * c) == pytest.approx(c * rmse(pred, actual), rel=1e-9)
    order = list(range(pred.size))
    random.shuffle(order)
    assert rmse(pred[order], actual[order]) == pytest.approx(rmse(pred, actual), rel=1e-12)
    assert rmse(pred, actual) >= np.mean(np.abs(pred - actual)) * (1 - 1e-12)


def records(flags, strategy=Strategy.SC_AC):
    return [ImprovementRecord(i, strategy, "x", 1.0, 0.0, f, {}) for i, f in enumerate(flags)]


def test_days_improved():
    assert days_improved(records([True, False, True]), "sc-ac") == 2
    assert days_improved(records([False] * 4), Strategy.SC_AC) == 0
    assert days_improved(records([True] * 258 + [False] * 34), "sc-ac") == 258
    with pytest.raises(ValueError):
        days_improved([], "sc-ac")
    with pytest.raises(ValueError):
        days_improved(records([True]), "bogus")
    with pytest.raises(ValueError):
        days_improved(records([True]), "rc-ac")


def test_report_layout(tmp_path):
    recs = [ImprovementRecord(0, Strategy.SC_AC, "a+b", 10.0, 0.0, True, {}),
            ImprovementRecord(0, Strategy.RC_AC, "a", 9.0, 1.0, False, {})]
    report = evaluate({"a": [9.0], "b": [12.0]}, [10.0], recs)
    assert [r.name for r in report.rows] == ["a", "b", "sc-ac", "rc-ac"]
    assert report["sc-ac"].rmse == 0.0 and report["sc-ac"].days_improved == 1
    text = report.to_text().splitlines()
    assert text[0].split("|")[1].strip() == "Base models"
    assert [c.strip() for c in text[1].split("|")] == ["", "a", "b", "SC", "RC"]
    assert text[4].split("|")[3].strip() == "0.00"
    report.to_csv(tmp_path / "s.csv")
    assert (tmp_path / "s.csv").read_text().splitlines()[3] == "sc-ac,strategy,0.0,0.0,1,1"


def test_report_invariants():
    with pytest.raises(ValueError):
        EvaluationReport((SystemScore("x", "strategy", 1.0, 1.0, 5),), 3)
