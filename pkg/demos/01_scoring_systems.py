# %% [markdown]
# # Scoring systems, rank functions and RSC functions
#
# A scoring system gives every item a score in [0, 1]. Ranking by score
# gives the rank function, and listing the scores in rank order gives the
# rank-score characteristic (RSC) function.

# %%
import numpy as np

from cfafusion import ItemSet, ScoringSystem, rank_from_scores, rsc_function

items = ItemSet(np.array(["d1", "d2", "d3", "d4", "d5"]))
raw = [12.0, 40.0, 25.0, 40.0, 3.0]
A = ScoringSystem.from_raw(items, raw, "A")
print("normalized scores:", A.scores.round(3))

# %% [markdown]
# Higher scores get lower rank numbers. d2 and d4 tie; the earlier item wins.

# %%
print("ranks:", rank_from_scores(A))
print("RSC f(1..n):", rsc_function(A).round(3))

# %% [markdown]
# Any strictly increasing change of the raw scores leaves the ranks alone,
# but it does change the RSC function, i.e. the system's scoring behaviour.

# %%
B = ScoringSystem.from_raw(items, np.sqrt(raw), "B")
print("ranks of B:", rank_from_scores(B))
print("RSC of B:  ", rsc_function(B).round(3))
