import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfafusion.combination import (
    MAXIMIZE,
    MINIMIZE,
    RANK,
    SCORE,
    WeightScheme,
    combine_ranks,
    combine_scores,
)
from cfafusion.scoring import ItemSet, ScoringSystem

from . import oracles


def systems_of(*score_lists):
    items = ItemSet(np.arange(len(score_lists[0])))
    return [ScoringSystem(items, s, f"S{j}") for j, s in enumerate(score_lists)]


def test_score_average_and_weighted():
    a, b = systems_of([1.0, 0.0], [0.0, 1.0])
    ac = combine_scores([a, b])
    np.testing.assert_array_equal(ac.values, [0.5, 0.5])
    assert ac.basis == SCORE and ac.direction == MAXIMIZE
    wcds = combine_scores([a, b], WeightScheme.diversity([1, 3]))
    np.testing.assert_allclose(wcds.values, [0.25, 0.75], atol=1e-15)


def test_repeated_system_is_reproduced():
    (a,) = systems_of([0.1, 0.7, 0.4])
    np.testing.assert_allclose(combine_scores([a, a, a]).values, a.scores, atol=1e-15)
    np.testing.assert_array_equal(combine_ranks([a, a]).values, a.ranks)


def test_rank_average_and_weighted():
    # scores chosen so the ranks are [1, 2] and [2, 1]
    a, b = systems_of([0.9, 0.1], [0.1, 0.9])
    ac = combine_ranks([a, b])
    np.testing.assert_array_equal(ac.values, [1.5, 1.5])
    assert ac.basis == RANK and ac.direction == MINIMIZE
    w = combine_ranks([a, b], WeightScheme.diversity([1, 3]))
    np.testing.assert_allclose(w.values, [1.25, 1.75], atol=1e-15)


def test_weight_errors():
    a, b = systems_of([1.0, 0.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        combine_scores([a, b], WeightScheme.diversity([1, 2, 3]))
    with pytest.raises(ValueError):
        combine_ranks([a, b], WeightScheme.performance([1, 0]))
    with pytest.raises(ValueError):
        combine_scores([a, b], WeightScheme.performance([1, -1]))
    with pytest.raises(ValueError):
        combine_scores([a])
    with pytest.raises(ValueError):
        WeightScheme("AC", WeightScheme.diversity([1, 2]).weights)
    with pytest.raises(ValueError):
        WeightScheme("WCDS")


def test_zero_diversity_falls_back_to_average(caplog):
    a, b = systems_of([1.0, 0.0], [0.0, 1.0])
    out = combine_ranks([a, b], WeightScheme.diversity([0.0, 0.0]))
    np.testing.assert_array_equal(out.values, combine_ranks([a, b]).values)
    assert "falling back" in caplog.text


def test_mismatched_items_rejected():
    a = ScoringSystem(ItemSet(np.arange(2)), [0, 1], "a")
    b = ScoringSystem(ItemSet(np.arange(1, 3)), [0, 1], "b")
    with pytest.raises(ValueError, match="same item set"):
        combine_scores([a, b])


problems = st.integers(2, 5).flatmap(
    lambda t: st.integers(3, 20).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(st.floats(0, 1), min_size=n, max_size=n), min_size=t, max_size=t),
            st.lists(st.floats(0.01, 10), min_size=t, max_size=t),
        )
    )
)


@settings(max_examples=200)
@given(problems)
def test_matches_direct_formulas(problem):
    score_lists, weights = problem
    systems = systems_of(*score_lists)
    for scheme, w in [(WeightScheme.average(), None), (WeightScheme.diversity(weights), weights),
                      (WeightScheme.performance(weights), weights)]:
        np.testing.assert_allclose(combine_scores(systems, scheme).values,
                                   oracles.score_combination(score_lists, w), rtol=0, atol=1e-12)
        np.testing.assert_allclose(combine_ranks(systems, scheme).values,
                                   oracles.rank_combination(score_lists, w), rtol=0, atol=1e-12)


@settings(max_examples=100)
@given(problems, st.floats(0.01, 100), st.randoms())
def test_invariants(problem, scale, random):
    score_lists, weights = problem
    systems = systems_of(*score_lists)
    stacked = np.array(score_lists)

    sc = combine_scores(systems).values
    assert np.all(stacked.min(axis=0) - 1e-12 <= sc) and np.all(sc <= stacked.max(axis=0) + 1e-12)

    shuffled = list(systems)
    random.shuffle(shuffled)
    np.testing.assert_allclose(combine_scores(shuffled).values, sc, atol=1e-15)

    w = np.array(weights)
    base = combine_ranks(systems, WeightScheme.diversity(w)).values
    scaled = combine_ranks(systems, WeightScheme.diversity(w * scale)).values
    np.testing.assert_allclose(scaled, base, atol=1e-12)
    n = len(score_lists[0])
    assert np.all(base >= 1 - 1e-12) and np.all(base <= n + 1e-12)

    const = combine_scores(systems, WeightScheme.diversity(np.full(len(systems), scale))).values
    np.testing.assert_allclose(const, sc, atol=1e-12)
    top = np.sort(sc)[-2:]
    if top.size < 2 or top[1] - top[0] > 1e-9:
        assert np.argmax(const) == np.argmax(sc)
