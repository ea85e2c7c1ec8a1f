"""Grey-wolf-family optimizers: classic, exponential-decay variant, and the
elite-archive + gated-balance-search variant with its two single-mechanism
ablations.

All runners share the same deterministic skeleton: clamp, evaluate the
whole population, pick the three leaders, record the best-so-far trace,
then rebuild every position from leader-guided steps.  Random draws
follow a fixed per-wolf order so identical seeds reproduce identical
trajectories bit for bit.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .core import (
    ConfigError,
    Problem,
    RunConfig,
    RunResult,
    clamp_to_bounds,
    derive_stream,
    evaluate,
    initial_population,
)


def decay_linear(t: int, max_iters: int) -> float:
    """Step-size control decreasing linearly from 2 to 0 over the run."""
    return 2.0 - t * (2.0 / max_iters)


def decay_exponential(t: int, max_iters: int) -> float:
    """Quadratic-in-t decay ``2 * (1 - t^2 / T^2)``; the mGWO schedule."""
    return 2.0 * (1.0 - (t * t) / (max_iters * max_iters))


@dataclasses.dataclass(frozen=True)
class LeaderTriple:
    """The three best wolves (positions stacked ``(3, dim)``) with fitness.

    Ordered best-first: ``fitness[0] <= fitness[1] <= fitness[2]``.
    """

    positions: np.ndarray
    fitnesses: np.ndarray

    def __post_init__(self):
        if self.positions.shape[0] != 3 or self.fitnesses.shape != (3,):
            raise ValueError("a leader triple holds exactly three wolves")
        if not (self.fitnesses[0] <= self.fitnesses[1] <= self.fitnesses[2]):
            raise ValueError("leader triple must be ordered by fitness")

    @property
    def alpha(self) -> np.ndarray:
        return self.positions[0]

    @property
    def beta(self) -> np.ndarray:
        return self.positions[1]

    @property
    def delta(self) -> np.ndarray:
        return self.positions[2]


@dataclasses.dataclass(frozen=True)
class EliteArchive:
    """Rolling elite store: last iteration's candidates plus the current best.

    ``candidate3`` always holds the three lowest-fitness wolves of the
    merged six-member pool, so its alpha fitness never regresses.
    """

    parent3: LeaderTriple
    candidate3: LeaderTriple


def update_archive(archive: EliteArchive | None, current3: LeaderTriple,
                   t: int) -> EliteArchive:
    """Advance the elite archive by one iteration.

    At ``t == 0`` both slots are seeded from the current leaders.  Later,
    the previous candidates become the parents, the six wolves
    ``parents + currents`` are stably sorted by fitness (parents precede
    currents on ties) and the best three become the new candidates.  All
    stored positions are snapshot copies.
    """
    current3 = LeaderTriple(current3.positions.copy(), current3.fitnesses.copy())
    if t == 0 or archive is None:
        return EliteArchive(parent3=current3, candidate3=current3)
    parent3 = archive.candidate3
    pool_pos = np.concatenate([parent3.positions, current3.positions])
    pool_fit = np.concatenate([parent3.fitnesses, current3.fitnesses])
    order = np.argsort(pool_fit, kind="stable")[:3]
    candidate3 = LeaderTriple(pool_pos[order].copy(), pool_fit[order].copy())
    return EliteArchive(parent3=parent3, candidate3=candidate3)


@dataclasses.dataclass(frozen=True)
class StepCoefficients:
    """Per-leader step coefficients ``A`` and ``C``, each ``(3, dim)``.

    Every ``A`` component lies in ``[-a, a]`` and every ``C`` component
    in ``[0, 2)``.
    """

    a: float
    A: np.ndarray
    C: np.ndarray


def draw_coefficients(a: float, dim: int, rng: np.random.Generator) -> StepCoefficients:
    """Draw fresh coefficients for one wolf, consuming ``6 * dim`` uniforms.

    Consumption order is fixed: for each dimension in turn, the six
    draws (r1 for A1, r2 for C1, then A2, C2, A3, C3).  ``A = 2a*r1 - a``
    and ``C = 2*r2``.
    """
    u = rng.random((dim, 6))
    return _coefficients_from_uniforms(a, u)


def _coefficients_from_uniforms(a: float, u: np.ndarray) -> StepCoefficients:
    A = (2.0 * a * u[..., 0::2] - a)
    C = 2.0 * u[..., 1::2]
    # (..., dim, 3) -> (..., 3, dim)
    return StepCoefficients(a=a, A=np.moveaxis(A, -1, -2), C=np.moveaxis(C, -1, -2))


def _guided_step(x: np.ndarray, guides: np.ndarray, coeffs: StepCoefficients) -> np.ndarray:
    """Mean of the three leader-guided candidate positions.

    ``guides`` stacks the three guiding wolves along axis -2; broadcasting
    lets one call serve a single wolf ``(dim,)`` or a population
    ``(pop, dim)`` against per-wolf coefficients.
    """
    d = np.abs(coeffs.C * guides - x[..., None, :])
    candidates = guides - coeffs.A * d
    return np.mean(candidates, axis=-2)


def leader_guided_update(x: np.ndarray, leaders: LeaderTriple,
                         coeffs: StepCoefficients) -> np.ndarray:
    """Classic position update guided by the alpha/beta/delta triple."""
    return _guided_step(x, leaders.positions, coeffs)


def balance_update(x: np.ndarray, cand1: np.ndarray, cand2: np.ndarray,
                   x_r: np.ndarray, coeffs: StepCoefficients) -> np.ndarray:
    """Diversified update guided by two elite candidates and a random wolf.

    Identical algebra to :func:`leader_guided_update` with the guide
    triple ``(cand1, cand2, x_r)``.
    """
    return _guided_step(x, np.stack([cand1, cand2, x_r]), coeffs)


def _run_loop(problem: Problem, cfg: RunConfig, rng: np.random.Generator | None,
              decay, variant: str) -> RunResult:
    """Shared iteration skeleton for the whole GWO family."""
    if rng is None:
        rng = derive_stream(cfg.seed, 0)
    pop, dim, iters = cfg.pop_size, problem.dim, cfg.max_iters
    gated = variant in ("ebgwo", "bsm")
    archived = variant in ("ebgwo", "eim")

    positions = initial_population(problem, pop, rng)
    trace = np.empty(iters)
    best_fit = np.inf
    best_pos = positions[0].copy()
    evaluations = 0
    balance_count = 0
    classic_count = 0
    archive: EliteArchive | None = None

    for t in range(iters):
        positions = clamp_to_bounds(positions, problem.bounds)
        fitness = np.asarray(evaluate(problem, positions))
        evaluations += pop

        order = np.argsort(fitness, kind="stable")
        current3 = LeaderTriple(positions[order[:3]].copy(), fitness[order[:3]].copy())
        if fitness[order[0]] < best_fit:
            best_fit = float(fitness[order[0]])
            best_pos = positions[order[0]].copy()
        trace[t] = best_fit

        if archived:
            archive = update_archive(archive, current3, t)
            candidate3 = archive.candidate3
        else:
            candidate3 = current3

        a = decay(t, iters)
        if variant == "plain":
            u = rng.random((pop, dim, 6))
            coeffs = _coefficients_from_uniforms(a, u)
            positions = _guided_step(positions, current3.positions, coeffs)
            classic_count += pop
            continue

        # Per wolf: gate draw, random-wolf index draw, then 6*dim
        # coefficient draws (the index draw is always consumed; it only
        # steers the balance branch).
        u = rng.random((pop, 2 + 6 * dim))
        gate = u[:, 0]
        rand_idx = np.floor(u[:, 1] * pop).astype(int)
        coeffs = _coefficients_from_uniforms(a, u[:, 2:].reshape(pop, dim, 6))

        if gated:
            balance = gate < cfg.st
        else:
            balance = np.zeros(pop, dtype=bool)
        n_balance = int(balance.sum())
        balance_count += n_balance
        classic_count += pop - n_balance

        if variant == "eim":
            classic_guides = candidate3.positions
        else:
            classic_guides = current3.positions
        x_r = positions[rand_idx]
        mask = balance[:, None]
        guides = np.stack(
            [
                np.where(mask, candidate3.positions[0], classic_guides[0]),
                np.where(mask, candidate3.positions[1], classic_guides[1]),
                np.where(mask, x_r, classic_guides[2]),
            ],
            axis=-2,
        )
        positions = _guided_step(positions, guides, coeffs)

    return RunResult(
        best_position=best_pos,
        best_fitness=best_fit,
        trace=trace,
        evaluations=evaluations,
        balance_updates=balance_count,
        classic_updates=classic_count,
    )


def run_gwo(problem: Problem, cfg: RunConfig,
            rng: np.random.Generator | None = None) -> RunResult:
    """Classic run: every wolf follows the current alpha/beta/delta.

    ``cfg.algorithm`` selects the decay schedule: linear for ``gwo``,
    the exponential variant for ``mgwo``.
    """
    if cfg.algorithm not in ("gwo", "mgwo"):
        raise ConfigError(f"run_gwo handles 'gwo' or 'mgwo', not {cfg.algorithm!r}")
    decay = decay_exponential if cfg.algorithm == "mgwo" else decay_linear
    return _run_loop(problem, cfg, rng, decay, variant="plain")


def run_ebgwo(problem: Problem, cfg: RunConfig,
              rng: np.random.Generator | None = None,
              variant: str = "ebgwo") -> RunResult:
    """Elite-archive run with the gated balance search.

    Per wolf each iteration: one uniform gate draw; if it falls below
    ``cfg.st`` the wolf takes the diversified update guided by the two
    best archived candidates plus a uniformly chosen population member,
    otherwise the classic update guided by the current leaders.

    ``variant`` selects the ablations: ``"eim"`` keeps the archive but
    forces the classic-style update guided by the archived candidates
    (the gate is ignored); ``"bsm"`` keeps the gate but disables the
    archive, substituting the current leaders for the candidates.
    """
    if variant not in ("ebgwo", "eim", "bsm"):
        raise ConfigError(f"unknown variant {variant!r}")
    return _run_loop(problem, cfg, rng, decay_linear, variant=variant)
