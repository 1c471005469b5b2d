# %% [markdown]
# # Backtest on a synthetic price series
#
# Five baseline forecasters run over an expanding window on a geometric
# random walk. Their test-period forecasts are fused day by day and scored.
# A strategy's final forecast on a day is whichever of the 31 columns
# (5 models, 26 groups) lands closest to the realised price, so strategy
# errors are an optimistic, hindsight figure; raw group columns are shown too.

# %%
import numpy as np

from cfafusion import FusionPlan, evaluate, fuse_series, improvement_analysis, residual_stddev, split_train_test
from cfafusion.datasets import geometric_random_walk
from cfafusion.metrics import rmse
from cfafusion.pipeline import strategy_table
from cfafusion.predictors import DEFAULT_MODELS, baseline_predict

prices = geometric_random_walk(300, seed=3)
train, test = split_train_test(prices, 0.8)
history = prices["price"]
actual = test["price"]
forecasts = {cfg.name: baseline_predict(history, cfg, len(test)).values for cfg in DEFAULT_MODELS}
sigmas = {name: residual_stddev(pred, actual) for name, pred in forecasts.items()}
print("residual spreads:", {k: round(v, 3) for k, v in sigmas.items()})

# %%
plan = FusionPlan(tuple(forecasts))
results = fuse_series(forecasts, sigmas, plan, days=list(test.dates))
records = improvement_analysis(results, actual)
individual = {m: np.array([r.individual[m] for r in results]) for m in plan.model_labels}
print(evaluate(individual, actual, records).to_text())

# %% [markdown]
# Without the hindsight pick, each group column is an ordinary forecast.

# %%
table = strategy_table(results, plan, "sc-ac")
scores = sorted((rmse(table[c], actual), c) for c in plan.group_labels)
for err, name in scores[:5]:
    print(f"{name:35s} RMSE {err:.4f}")
