"""Exact discrete probabilistic programming on a lazy non-deterministic engine.

Distributions are non-deterministic values in a shared, lazily evaluated
graph.  A query enumerates only the branches its predicate demands, so
predicates that reject early prune whole subtrees of the search.
"""

from .core import (
    CyclicDemandError,
    EvalStats,
    EvaluationError,
    EvaluationTimeout,
    Fingerprint,
    Session,
    Strategy,
    TypeConfusionError,
    all_values,
    enumerate_values,
    fail,
    fold_values,
    force,
    mk_choice,
    run_with_deep_stack,
    suspend,
)
from .pflp import (
    InvalidDistribution,
    bind,
    certainly,
    enum,
    filter_dist,
    join_with,
    member,
    pick,
    query,
    replicate_dist,
    strict_bind,
    uniform,
    validate_dist,
)

__version__ = "0.1.0"

__all__ = [
    "CyclicDemandError",
    "EvalStats",
    "EvaluationError",
    "EvaluationTimeout",
    "Fingerprint",
    "InvalidDistribution",
    "Session",
    "Strategy",
    "TypeConfusionError",
    "all_values",
    "bind",
    "certainly",
    "enum",
    "enumerate_values",
    "fail",
    "filter_dist",
    "fold_values",
    "force",
    "join_with",
    "member",
    "mk_choice",
    "pick",
    "query",
    "replicate_dist",
    "run_with_deep_stack",
    "strict_bind",
    "suspend",
    "uniform",
    "validate_dist",
]
