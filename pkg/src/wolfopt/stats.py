"""Descriptive statistics, win/tie/loss ranking, overall effectiveness,
and the Wilcoxon signed-rank comparison."""

from __future__ import annotations

import dataclasses
import math

import numpy as np

EXACT_MAX_N = 20


@dataclasses.dataclass(frozen=True)
class SummaryStats:
    mean: float
    std: float
    best: float
    worst: float


def summarize(runs) -> SummaryStats:
    """Sample mean, sample std (n-1 divisor, 0 for a singleton), min, max."""
    values = np.asarray(list(runs), dtype=float)
    if values.size == 0:
        raise ValueError("summarize requires at least one run")
    std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return SummaryStats(
        mean=float(np.mean(values)),
        std=std,
        best=float(np.min(values)),
        worst=float(np.max(values)),
    )


class ComparisonTable:
    """Per-(algorithm, problem, dim) best-fitness lists for one comparison."""

    def __init__(self):
        self._cells: dict[tuple[str, str, int], list[float]] = {}

    def add(self, algorithm: str, problem: str, dim: int, value: float) -> None:
        self._cells.setdefault((algorithm, problem, dim), []).append(float(value))

    def set_cell(self, algorithm: str, problem: str, dim: int, values) -> None:
        self._cells[(algorithm, problem, dim)] = [float(v) for v in values]

    @property
    def algorithms(self) -> list[str]:
        return sorted({key[0] for key in self._cells})

    @property
    def case_keys(self) -> list[tuple[str, int]]:
        return sorted({(key[1], key[2]) for key in self._cells})

    def runs(self, algorithm: str, problem: str, dim: int) -> list[float]:
        return self._cells[(algorithm, problem, dim)]

    def mean(self, algorithm: str, problem: str, dim: int) -> float:
        return summarize(self._cells[(algorithm, problem, dim)]).mean

    def validate(self) -> None:
        counts = {len(v) for v in self._cells.values()}
        if len(counts) > 1:
            raise ValueError(f"cells disagree on run count: {sorted(counts)}")
        for problem, dim in self.case_keys:
            for algorithm in self.algorithms:
                if (algorithm, problem, dim) not in self._cells:
                    raise ValueError(
                        f"missing cell ({algorithm}, {problem}, {dim}) in comparison"
                    )


def wtl_rank(table: ComparisonTable) -> dict[str, tuple[int, int, int]]:
    """Win/tie/loss counts per algorithm over every (problem, dim) case.

    In each case the strictly lowest mean wins; algorithms sharing the
    lowest mean tie; everyone else loses.
    """
    table.validate()
    algorithms = table.algorithms
    if len(algorithms) < 2:
        raise ValueError("ranking needs at least two algorithms")
    counts = {a: [0, 0, 0] for a in algorithms}
    for problem, dim in table.case_keys:
        means = {a: table.mean(a, problem, dim) for a in algorithms}
        lowest = min(means.values())
        holders = [a for a, m in means.items() if m == lowest]
        for a in algorithms:
            if means[a] > lowest:
                counts[a][2] += 1
            elif len(holders) == 1:
                counts[a][0] += 1
            else:
                counts[a][1] += 1
    return {a: tuple(c) for a, c in counts.items()}


def overall_effectiveness(n_cases: int, losses: int) -> float:
    """Percentage of cases not lost: ``(N - L) / N * 100``."""
    if n_cases <= 0:
        raise ValueError("case count must be positive")
    if not 0 <= losses <= n_cases:
        raise ValueError("losses must lie in [0, N]")
    return (n_cases - losses) / n_cases * 100.0


def format_percent(value: float) -> str:
    return f"{value:.2f}%"


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with mid-ranks on ties."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.size, dtype=float)
    i = 0
    while i < values.size:
        j = i
        while j + 1 < values.size and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


@dataclasses.dataclass(frozen=True)
class WilcoxonResult:
    w_plus: float
    w_minus: float
    p_value: float
    n: int
    method: str

    def significant(self, alpha: float) -> bool:
        return self.p_value < alpha


def _exact_two_sided_p(ranks: np.ndarray, w_plus: float) -> float:
    """Exact tail probability over all sign assignments of the ranks.

    Counts assignments by dynamic programming over the doubled rank sums
    (mid-ranks are half-integers, so doubling makes them integers); this
    tallies exactly the ``2^n`` equally likely sign patterns.
    """
    doubled = np.rint(2.0 * ranks).astype(int)
    total_sum = int(doubled.sum())
    counts = np.zeros(total_sum + 1, dtype=float)
    counts[0] = 1.0
    for r in doubled:
        counts[r:] = counts[r:] + counts[:-r]
    target = int(round(2.0 * w_plus))
    n_patterns = 2.0 ** len(ranks)
    p_le = counts[: target + 1].sum() / n_patterns
    p_ge = counts[target:].sum() / n_patterns
    return min(1.0, 2.0 * min(p_le, p_ge))


def _normal_two_sided_p(ranks: np.ndarray, w_plus: float) -> float:
    """Normal approximation with tie-corrected variance and continuity
    correction."""
    n = len(ranks)
    mu = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    var -= np.sum(tie_counts**3 - tie_counts) / 48.0
    if var <= 0:
        return 1.0
    dev = w_plus - mu
    if dev == 0:
        return 1.0
    z = (abs(dev) - 0.5) / math.sqrt(var)
    return min(1.0, math.erfc(z / math.sqrt(2.0)))


def wilcoxon_signed_rank(paired_a, paired_b) -> WilcoxonResult:
    """Two-sided Wilcoxon signed-rank test on paired samples.

    Differences ``a - b`` are ranked by magnitude with mid-rank ties
    after dropping zeros; ``w_plus``/``w_minus`` sum the ranks of
    positive/negative differences (their total is always
    ``n * (n + 1) / 2``).  The p-value is exact (enumeration over all
    sign assignments) for ``n <= 20``, otherwise a tie-corrected,
    continuity-corrected normal approximation.
    """
    a = np.asarray(list(paired_a), dtype=float)
    b = np.asarray(list(paired_b), dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("paired samples must be 1-d and of equal length")
    diffs = a - b
    diffs = diffs[diffs != 0.0]
    n = diffs.size
    if n == 0:
        raise ValueError("degenerate input: all paired differences are zero")
    if n < 5:
        raise ValueError(f"need at least 5 nonzero differences, have {n}")
    ranks = _average_ranks(np.abs(diffs))
    w_plus = float(ranks[diffs > 0].sum())
    w_minus = float(ranks[diffs < 0].sum())
    if n <= EXACT_MAX_N:
        p = _exact_two_sided_p(ranks, w_plus)
        method = "exact"
    else:
        p = _normal_two_sided_p(ranks, w_plus)
        method = "normal"
    return WilcoxonResult(w_plus=w_plus, w_minus=w_minus, p_value=p, n=n, method=method)
