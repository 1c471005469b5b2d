# %% [markdown]
# # From point forecasts to scoring systems
#
# Each model's forecast becomes a normal density truncated at two standard
# deviations. All models of one day share a price grid spanning the union of
# their windows, clamped at zero. Grid prices are the items; the
# peak-normalized densities are the scores.

# %%
from cfafusion import (
    PredictionPoint,
    Strategy,
    FusionPlan,
    build_price_grid,
    expand_to_distribution,
    fuse_day,
)

points = [
    PredictionPoint("svm", "day-1", 101.0, 2.0),
    PredictionPoint("rf", "day-1", 97.5, 3.5),
    PredictionPoint("lstm", "day-1", 104.0, 5.0),
]
grid = build_price_grid(points, 2001)
print(f"grid [{grid.lower:.2f}, {grid.upper:.2f}] with spacing {grid.spacing:.4f}")
dists = [expand_to_distribution(p, grid) for p in points]
for d in dists:
    inside = (d.scores > 0).sum()
    print(f"{d.model_label:5s} peak at {grid.points[d.scores.argmax()]:.3f}, {inside} grid points inside its window")

# %% [markdown]
# Fuse every group of two or more models under the four default strategies.

# %%
result = fuse_day(dists, FusionPlan(("svm", "rf", "lstm")))
for strategy in Strategy:
    if strategy in result.groups:
        print(strategy.value, {k: round(v, 3) for k, v in result.groups[strategy].items()})
