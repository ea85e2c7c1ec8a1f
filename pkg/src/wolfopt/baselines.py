"""Comparison baselines: the sine-cosine and whale optimizers.

Both follow their canonical published update rules, share the family's
clamp/evaluate/trace skeleton, and honor the same determinism contract.
"""

from __future__ import annotations

import numpy as np

from .core import (
    Problem,
    RunConfig,
    RunResult,
    clamp_to_bounds,
    derive_stream,
    evaluate,
    initial_population,
)

SCA_A = 2.0
WOA_SPIRAL_B = 1.0


def run_sca(problem: Problem, cfg: RunConfig,
            rng: np.random.Generator | None = None) -> RunResult:
    """Sine Cosine Algorithm run.

    Each component moves toward (or past) the best-so-far position by
    ``r1 * sin(r2) * |r3 * best - x|`` or the cosine twin, chosen by
    ``r4 < 0.5``; ``r1`` decreases linearly from 2 to 0.  Per wolf and
    dimension the three uniforms are consumed in the order r2, r3, r4.
    """
    if rng is None:
        rng = derive_stream(cfg.seed, 0)
    pop, dim, iters = cfg.pop_size, problem.dim, cfg.max_iters

    positions = initial_population(problem, pop, rng)
    trace = np.empty(iters)
    best_fit = np.inf
    best_pos = positions[0].copy()
    evaluations = 0

    for t in range(iters):
        positions = clamp_to_bounds(positions, problem.bounds)
        fitness = np.asarray(evaluate(problem, positions))
        evaluations += pop
        i_best = int(np.argmin(fitness))
        if fitness[i_best] < best_fit:
            best_fit = float(fitness[i_best])
            best_pos = positions[i_best].copy()
        trace[t] = best_fit

        r1 = SCA_A - t * (SCA_A / iters)
        u = rng.random((pop, dim, 3))
        r2 = 2.0 * np.pi * u[..., 0]
        r3 = 2.0 * u[..., 1]
        r4 = u[..., 2]
        reach = np.abs(r3 * best_pos - positions)
        step = r1 * np.where(r4 < 0.5, np.sin(r2), np.cos(r2)) * reach
        positions = positions + step

    return RunResult(best_pos, best_fit, trace, evaluations)


def run_woa(problem: Problem, cfg: RunConfig,
            rng: np.random.Generator | None = None) -> RunResult:
    """Whale Optimization Algorithm run.

    Per whale: with probability 1/2 a shrinking-encircling move
    (exploiting the best when ``|A| < 1``, else chasing a random whale),
    otherwise the logarithmic spiral ``|best - x| * e^(b*l) * cos(2*pi*l)
    + best`` with ``b = 1`` and ``l`` uniform in ``[-1, 1]``.  The five
    per-whale uniforms are consumed in the order r1, r2, l, p, whale
    index (the index draw only steers the random-whale branch).
    """
    if rng is None:
        rng = derive_stream(cfg.seed, 0)
    pop, dim, iters = cfg.pop_size, problem.dim, cfg.max_iters

    positions = initial_population(problem, pop, rng)
    trace = np.empty(iters)
    best_fit = np.inf
    best_pos = positions[0].copy()
    evaluations = 0

    for t in range(iters):
        positions = clamp_to_bounds(positions, problem.bounds)
        fitness = np.asarray(evaluate(problem, positions))
        evaluations += pop
        i_best = int(np.argmin(fitness))
        if fitness[i_best] < best_fit:
            best_fit = float(fitness[i_best])
            best_pos = positions[i_best].copy()
        trace[t] = best_fit

        a = 2.0 - t * (2.0 / iters)
        u = rng.random((pop, 5))
        A = 2.0 * a * u[:, 0] - a
        C = 2.0 * u[:, 1]
        l = 2.0 * u[:, 2] - 1.0
        p = u[:, 3]
        rand_idx = np.floor(u[:, 4] * pop).astype(int)

        x_rand = positions[rand_idx]
        target = np.where((np.abs(A) < 1.0)[:, None], best_pos, x_rand)
        reach = np.abs(C[:, None] * target - positions)
        encircle = target - A[:, None] * reach

        dist = np.abs(best_pos - positions)
        spiral = dist * (np.exp(WOA_SPIRAL_B * l) * np.cos(2.0 * np.pi * l))[:, None] + best_pos

        positions = np.where((p < 0.5)[:, None], encircle, spiral)

    return RunResult(best_pos, best_fit, trace, evaluations)
