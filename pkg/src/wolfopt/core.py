"""Shared domain types: bounds, problems, penalised evaluation, seeded streams.

Everything downstream (optimizers, benchmark suite, experiment harness)
builds on the small vocabulary defined here.  Positions are plain float64
ndarrays of shape ``(dim,)``; objectives and constraints are vectorized
over leading axes, so a whole population of shape ``(n, dim)`` evaluates
in one call.
"""

from __future__ import annotations

import dataclasses
import hashlib
from typing import Callable

import numpy as np

# Static exterior-penalty weight for constraint violations.
PENALTY_WEIGHT = 1e10


class DimensionMismatchError(ValueError):
    """Input vector length does not match the expected dimension."""


class NonFiniteObjectiveError(ValueError):
    """Objective produced NaN/Inf; carries the offending input."""

    def __init__(self, message: str, offending_input: np.ndarray):
        super().__init__(message)
        self.offending_input = np.asarray(offending_input)


class ConfigError(ValueError):
    """Invalid run or experiment configuration."""


@dataclasses.dataclass(frozen=True)
class Bounds:
    """Per-dimension box bounds with strict ``lower < upper``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.shape != upper.shape or lower.ndim != 1:
            raise DimensionMismatchError("lower and upper must be 1-d arrays of equal length")
        if not np.all(np.isfinite(lower)) or not np.all(np.isfinite(upper)):
            raise ValueError("bounds must be finite")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size

    @classmethod
    def cube(cls, dim: int, lower: float, upper: float) -> "Bounds":
        return cls(np.full(dim, float(lower)), np.full(dim, float(upper)))

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


def clamp_to_bounds(x: np.ndarray, bounds: Bounds) -> np.ndarray:
    """Clamp every out-of-bounds component to the nearer bound.

    Accepts a single position ``(dim,)`` or a stack ``(..., dim)``.
    In-bounds components pass through unchanged; the input is not
    modified.  Raises on dimension mismatch or non-finite components.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != bounds.dim:
        raise DimensionMismatchError(
            f"position has dimension {x.shape[-1]}, bounds have {bounds.dim}"
        )
    if not np.all(np.isfinite(x)):
        raise NonFiniteObjectiveError("position contains NaN/Inf components", x)
    return np.clip(x, bounds.lower, bounds.upper)


@dataclasses.dataclass(frozen=True)
class Problem:
    """An objective with bounds, optional constraints and metadata.

    ``objective`` maps arrays of shape ``(..., dim)`` to shape ``(...,)``.
    Each constraint ``g`` has the same signature; a point is feasible iff
    ``g(x) <= 0`` for all constraints.  Dimensions listed in
    ``integral_dims`` are rounded to the nearest integer before the
    objective and constraints see them.
    """

    name: str
    dim: int
    bounds: Bounds
    objective: Callable[[np.ndarray], np.ndarray]
    constraints: tuple = ()
    integral_dims: frozenset = frozenset()
    known_fmin: float | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.bounds.dim != self.dim:
            raise DimensionMismatchError("bounds dimension does not match problem dim")
        if any(d < 0 or d >= self.dim for d in self.integral_dims):
            raise ValueError("integral_dims indices out of range")


def evaluate(problem: Problem, x: np.ndarray) -> np.ndarray | float:
    """Penalised fitness of ``x`` (single point or stack of points).

    Integral dimensions are rounded first, then fitness is the raw
    objective plus a static quadratic exterior penalty
    ``sum_k PENALTY_WEIGHT * max(0, g_k(x))**2``.  On feasible points this
    equals the raw objective exactly.  Raises
    :class:`NonFiniteObjectiveError` if the objective yields NaN/Inf.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != problem.dim:
        raise DimensionMismatchError(
            f"position has dimension {x.shape[-1]}, problem expects {problem.dim}"
        )
    if problem.integral_dims:
        x = x.copy()
        idx = sorted(problem.integral_dims)
        x[..., idx] = np.rint(x[..., idx])
    value = np.asarray(problem.objective(x), dtype=float)
    if problem.constraints:
        penalty = np.zeros_like(value)
        for g in problem.constraints:
            viol = np.maximum(0.0, np.asarray(g(x), dtype=float))
            penalty = penalty + PENALTY_WEIGHT * viol * viol
        value = value + penalty
    if not np.all(np.isfinite(value)):
        if x.ndim > 1:
            bad = np.atleast_1d(~np.isfinite(value)).nonzero()
            offending = x[bad][0]
        else:
            offending = x
        raise NonFiniteObjectiveError(
            f"objective of {problem.name!r} produced a non-finite value", offending
        )
    if value.ndim == 0:
        return float(value)
    return value


def derive_stream(base_seed: int, cell_id: int) -> np.random.Generator:
    """Deterministic, platform-stable random stream for one cell.

    Distinct ``(base_seed, cell_id)`` pairs yield statistically
    independent streams; identical pairs yield identical sequences.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((base_seed, cell_id))))


def cell_seed(*parts) -> int:
    """Stable 64-bit id for a run cell, hashed from its identifying parts."""
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


@dataclasses.dataclass
class RunConfig:
    """Parameters of one seeded optimizer run."""

    pop_size: int = 30
    max_iters: int = 500
    seed: int = 0
    st: float = 0.2
    algorithm: str = "gwo"

    def __post_init__(self):
        if self.pop_size < 4:
            raise ConfigError("pop_size must be >= 4 (three leaders plus at least one omega)")
        if self.max_iters < 1:
            raise ConfigError("max_iters must be >= 1")
        if not 0.0 <= self.st <= 1.0:
            raise ConfigError("st must lie in [0, 1]")


@dataclasses.dataclass
class RunResult:
    """Outcome of one run: best point, best-so-far trace, bookkeeping.

    ``trace[t]`` is the running minimum of fitness after iteration ``t``,
    so the trace is monotonically nonincreasing and ``best_fitness``
    equals its final entry.  ``balance_updates``/``classic_updates``
    count which branch each position update took (only populated by
    algorithms that gate between two update rules).
    """

    best_position: np.ndarray
    best_fitness: float
    trace: np.ndarray
    evaluations: int
    balance_updates: int = 0
    classic_updates: int = 0


def initial_population(problem: Problem, pop_size: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform i.i.d. initialization inside the bounds, shape ``(pop_size, dim)``."""
    b = problem.bounds
    return b.lower + rng.random((pop_size, problem.dim)) * (b.upper - b.lower)
