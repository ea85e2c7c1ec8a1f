"""Grey-wolf-family metaheuristics with a benchmark experiment harness."""

from .core import (
    Bounds,
    ConfigError,
    DimensionMismatchError,
    NonFiniteObjectiveError,
    Problem,
    RunConfig,
    RunResult,
    clamp_to_bounds,
    derive_stream,
    evaluate,
)
from .gwo import run_ebgwo, run_gwo
from .baselines import run_sca, run_woa
from .harness import ALGORITHMS, ExperimentSpec, run_experiment

__all__ = [
    "ALGORITHMS",
    "Bounds",
    "ConfigError",
    "DimensionMismatchError",
    "ExperimentSpec",
    "NonFiniteObjectiveError",
    "Problem",
    "RunConfig",
    "RunResult",
    "clamp_to_bounds",
    "derive_stream",
    "evaluate",
    "run_ebgwo",
    "run_gwo",
    "run_sca",
    "run_woa",
    "run_experiment",
]

__version__ = "0.1.0"
