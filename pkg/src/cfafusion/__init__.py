"""Combinatorial fusion of scoring systems, applied to next-day price forecasts."""

from .combination import CombinedSystem, WeightScheme, combine_ranks, combine_scores
from .distribution import (
    DayDistribution,
    PredictionPoint,
    PriceGrid,
    build_price_grid,
    expand_to_distribution,
    residual_stddev,
)
from .diversity import (
    DiversityMatrix,
    StrengthVector,
    cognitive_diversity,
    diversity_matrix,
    diversity_strength,
)
from .ingestion import AlignedTable, DataError, SplitSpec, load_price_table, normalize_features, split_train_test
from .metrics import EvaluationReport, days_improved, evaluate, mape, rmse
from .pipeline import (
    FusionPlan,
    Strategy,
    enumerate_groups,
    fuse_day,
    fuse_series,
    improvement_analysis,
    select_price,
)
from .predictors import ForecastConfig, baseline_predict, forecast_next
from .scoring import ItemSet, ScoringSystem, normalize_scores, rank_from_scores, rsc_function

__version__ = "0.1.0"
