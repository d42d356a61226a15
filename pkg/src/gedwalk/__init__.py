"""GED-Walk group centrality: scoring and greedy maximization."""

from .errors import ConvergenceError, GedWalkError, GraphFormatError, WalkOverflowError
from .features import FeatureVector, ged_feature_vector
from .graph import (
    GeneratorSpec,
    Graph,
    gen_barabasi_albert,
    gen_erdos_renyi,
    largest_connected_component,
    load_edge_list,
    normalize_symmetric,
    reverse,
)
from .maximize import (
    GroupResult,
    group_degree_greedy,
    init_gain_bounds,
    marginal_partial,
    maximize_lazy,
    maximize_stochastic,
)
from .walks import (
    LevelState,
    ScoreResult,
    TailBoundConfig,
    choose_alpha,
    estimate_sigma_max,
    ged_score,
    level_step,
    phi_partial,
    sum_walks,
    tail_bound,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "FeatureVector",
    "GedWalkError",
    "GeneratorSpec",
    "Graph",
    "GraphFormatError",
    "GroupResult",
    "LevelState",
    "ScoreResult",
    "TailBoundConfig",
    "WalkOverflowError",
    "choose_alpha",
    "estimate_sigma_max",
    "ged_feature_vector",
    "ged_score",
    "gen_barabasi_albert",
    "gen_erdos_renyi",
    "group_degree_greedy",
    "init_gain_bounds",
    "largest_connected_component",
    "level_step",
    "load_edge_list",
    "marginal_partial",
    "maximize_lazy",
    "maximize_stochastic",
    "normalize_symmetric",
    "phi_partial",
    "reverse",
    "sum_walks",
    "tail_bound",
]
