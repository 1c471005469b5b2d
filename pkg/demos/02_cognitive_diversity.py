# %% [markdown]
# # Cognitive diversity and diversity strength
#
# Cognitive diversity is the root-mean-square gap between two RSC functions.
# A system's diversity strength is its mean diversity to the other systems,
# used as a fusion weight.

# %%
import numpy as np

from cfafusion import ItemSet, ScoringSystem, cognitive_diversity, diversity_matrix

rng = np.random.default_rng(0)
items = ItemSet(np.arange(50))
systems = [
    ScoringSystem(items, np.linspace(1, 0, 50), "linear"),
    ScoringSystem(items, np.linspace(1, 0, 50) ** 4, "steep"),
    ScoringSystem(items, np.sqrt(np.linspace(1, 0, 50)), "flat"),
    ScoringSystem(items, rng.permutation(np.linspace(1, 0, 50)), "shuffled"),
]

# %% [markdown]
# "shuffled" ranks items in a completely different order from "linear" but has
# the same RSC function, so their diversity is zero.

# %%
print("CD(linear, shuffled) =", cognitive_diversity(systems[0], systems[3]))
m = diversity_matrix(systems)
print(np.array2string(m.values, precision=3))
print("diversity strengths:", dict(zip(m.labels, m.strengths().values.round(3).tolist())))
