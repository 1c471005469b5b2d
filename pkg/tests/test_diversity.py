import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfafusion.diversity import (
    DiversityMatrix,
    cognitive_diversity,
    diversity_matrix,
    diversity_strength,
    group_strengths,
)
from cfafusion.scoring import ItemSet, ScoringSystem


def on(items, *score_lists):
    return [ScoringSystem(items, s, f"S{i}") for i, s in enumerate(score_lists)]


ITEMS3 = ItemSet(np.array(["x", "y", "z"]))


def test_identical_rsc_has_zero_diversity():
    a, b = on(ITEMS3, [1.0, 0.5, 0.0], [0.0, 1.0, 0.5])
    assert cognitive_diversity(a, b) == 0.0


def test_hand_computed_diversity():
    a, b = on(ITEMS3, [1.0, 0.5, 0.0], [1.0, 0.8, 0.0])
    # squared gaps 0, 0.09, 0 over n = 3
    assert cognitive_diversity(a, b) == pytest.approx(math.sqrt(0.09 / 3), abs=1e-12)
    assert cognitive_diversity(a, b) == pytest.approx(0.173205, abs=1e-6)
    m = diversity_matrix([a, b])
    assert m.values[0, 1] == m.values[1, 0] == pytest.approx(0.173205, abs=1e-6)


def test_mismatched_item_sets_name_both_systems():
    a = ScoringSystem(ITEMS3, [0, 0.5, 1], "alpha")
    b = ScoringSystem(ItemSet(np.arange(3)), [0, 0.5, 1], "beta")
    with pytest.raises(ValueError, match="alpha.*beta"):
        cognitive_diversity(a, b)


def test_strength_examples():
    items = ItemSet(np.arange(2))
    a, b = on(items, [1.0, 0.6], [1.0, 0.2])
    cd = cognitive_diversity(a, b)
    assert diversity_strength([a, b], 0) == pytest.approx(cd)
    assert diversity_strength([a, b], 1) == pytest.approx(cd)

    # three systems where CD(1,2)=0.2 and CD(1,3)=0.4 on one item
    one = ItemSet(np.array([0]))
    s1, s2, s3 = on(one, [0.5], [0.7], [0.9])
    assert diversity_strength([s1, s2, s3], 0) == pytest.approx(0.3, abs=1e-12)

    same = on(ITEMS3, *([[0.3, 0.6, 0.9]] * 4))
    assert all(diversity_strength(same, j) == 0.0 for j in range(4))


def test_strength_needs_two_systems():
    (a,) = on(ITEMS3, [0, 0.5, 1])
    with pytest.raises(ValueError):
        diversity_strength([a], 0)


def random_systems(rng, t, n, items=None):
    items = items or ItemSet(np.arange(n))
    return [ScoringSystem(items, rng.random(n), f"S{j}") for j in range(t)]


def test_matrix_matches_pairwise_calls(rng):
    systems = random_systems(rng, 4, 17)
    m = diversity_matrix(systems)
    for j, k in itertools.combinations(range(4), 2):
        assert m.values[j, k] == cognitive_diversity(systems[j], systems[k])
        assert m.values[k, j] == m.values[j, k]
    assert np.all(np.diag(m.values) == 0)
    strengths = m.strengths().values
    for j in range(4):
        assert strengths[j] == pytest.approx(diversity_strength(systems, j), abs=1e-15)
    np.testing.assert_allclose(group_strengths(m.values, range(4)), strengths)


unit_vectors = st.integers(2, 15).flatmap(
    lambda n: st.tuples(*[st.lists(st.floats(0, 1), min_size=n, max_size=n)] * 3)
)


@settings(max_examples=200)
@given(unit_vectors)
def test_pseudometric(vectors):
    items = ItemSet(np.arange(len(vectors[0])))
    a, b, c = on(items, *vectors)
    ab, ba, bc, ac = (cognitive_diversity(*p) for p in [(a, b), (b, a), (b, c), (a, c)])
    assert ab == ba
    assert cognitive_diversity(a, a) == 0
    assert 0 <= ab <= 1
    assert ac <= ab + bc + 1e-12


@given(st.lists(st.floats(0, 1), min_size=2, max_size=20), st.randoms())
def test_diversity_ignores_item_identity(scores, random):
    items = ItemSet(np.arange(len(scores)))
    shuffled = list(scores)
    random.shuffle(shuffled)
    a, a2, b = on(items, scores, shuffled, sorted(scores))
    ref = ScoringSystem(items, np.full(len(scores), 0.5))
    assert cognitive_diversity(a, ref) == cognitive_diversity(a2, ref)
    assert cognitive_diversity(a, b) == 0.0


def test_strength_between_min_and_max_pairwise(rng):
    for _ in range(50):
        systems = random_systems(rng, int(rng.integers(2, 6)), 12)
        m = diversity_matrix(systems).values
        for j in range(len(systems)):
            others = np.delete(m[j], j)
            ds = diversity_strength(systems, j)
            assert others.min() - 1e-15 <= ds <= others.max() + 1e-15


def test_matrix_csv(tmp_path):
    m = DiversityMatrix(("a", "b"), np.array([[0.0, 1 / 3], [1 / 3, 0.0]]))
    m.to_csv(tmp_path / "m.csv")
    assert (tmp_path / "m.csv").read_text() == "system,a,b\na,0,0.333333333\nb,0.333333333,0\n"
