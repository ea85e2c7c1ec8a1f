"""Experiment harness: config parsing, deterministic fan-out of seeded runs,
CSV/JSON result emission, and statistics reports.

Every (algorithm, problem, run) cell owns an independent random stream
derived from the experiment's base seed and a stable hash of the cell's
identity, so results are identical whether cells execute serially or on
a worker pool, and reruns are byte-identical.
"""

from __future__ import annotations

import csv
import dataclasses
import functools
import json
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import baselines, cec2014, engineering, gwo
from .core import ConfigError, Problem, RunConfig, cell_seed, derive_stream
from .stats import (
    ComparisonTable,
    format_percent,
    overall_effectiveness,
    summarize,
    wilcoxon_signed_rank,
    wtl_rank,
)

RESULTS_FILE = "results.csv"
SUMMARY_FILE = "summary.json"
TRACES_DIR = "traces"
RESULT_COLUMNS = ("algorithm", "problem", "dim", "run", "seed", "best_fitness", "evaluations")


def _run_gwo_linear(problem, cfg, rng):
    return gwo.run_gwo(problem, dataclasses.replace(cfg, algorithm="gwo"), rng)


def _run_mgwo(problem, cfg, rng):
    return gwo.run_gwo(problem, dataclasses.replace(cfg, algorithm="mgwo"), rng)


def _run_ebgwo(problem, cfg, rng):
    return gwo.run_ebgwo(problem, cfg, rng, variant="ebgwo")


def _run_gwo_eim(problem, cfg, rng):
    return gwo.run_ebgwo(problem, cfg, rng, variant="eim")


def _run_gwo_bsm(problem, cfg, rng):
    return gwo.run_ebgwo(problem, cfg, rng, variant="bsm")


ALGORITHMS = {
    "ebgwo": _run_ebgwo,
    "gwo": _run_gwo_linear,
    "mgwo": _run_mgwo,
    "gwo-eim": _run_gwo_eim,
    "gwo-bsm": _run_gwo_bsm,
    "sca": baselines.run_sca,
    "woa": baselines.run_woa,
}


@dataclasses.dataclass(frozen=True, order=True)
class ProblemRef:
    """Picklable handle for a problem (resolved lazily in each worker)."""

    kind: str  # "cec14" | "design"
    name: str
    dim: int
    func_id: int = 0


def parse_problem_tokens(tokens) -> list[ProblemRef]:
    """Expand problem tokens into refs.

    ``gear-train`` style names address the design problems;
    ``cec:7@10``, ``cec:1-30@10`` and ``cec:1,5,9@30`` address suite
    functions at a given dimension.
    """
    refs: list[ProblemRef] = []
    design = engineering.design_problems()
    for token in tokens:
        token = token.strip()
        if not token:
            continue
        if token in design:
            refs.append(ProblemRef("design", token, design[token].problem.dim))
        elif token.startswith("cec:"):
            body = token[4:]
            if "@" not in body:
                raise ConfigError(f"suite problem {token!r} needs a dimension, e.g. cec:5@10")
            ids_part, dim_part = body.split("@", 1)
            try:
                dim = int(dim_part)
            except ValueError:
                raise ConfigError(f"bad dimension in {token!r}") from None
            ids: list[int] = []
            for piece in ids_part.split(","):
                piece = piece.strip()
                if "-" in piece:
                    lo, hi = piece.split("-", 1)
                    ids.extend(range(int(lo), int(hi) + 1))
                else:
                    ids.append(int(piece))
            for func_id in ids:
                if func_id not in cec2014.FUNCTION_IDS:
                    raise ConfigError(f"suite function id {func_id} out of range 1..30")
                refs.append(ProblemRef("cec14", f"cec14-f{func_id}", dim, func_id))
        else:
            known = sorted(design) + ["cec:<ids>@<dim>"]
            raise ConfigError(f"unknown problem {token!r}; supported: {', '.join(known)}")
    if not refs:
        raise ConfigError("no problems specified")
    return refs


@dataclasses.dataclass
class ExperimentSpec:
    """Everything needed to reproduce one experiment."""

    algorithms: list[str]
    problems: list[ProblemRef]
    runs: int = 30
    pop_size: int = 30
    max_iters: int = 500
    st: float = 0.2
    base_seed: int = 0
    suite_seed: int | None = None
    suite_data: str | None = None
    output_dir: str = "results"
    reference: str | None = None
    workers: int = 1
    save_traces: bool = True

    def __post_init__(self):
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ConfigError(
                f"unknown algorithm(s) {unknown}; supported: {', '.join(sorted(ALGORITHMS))}"
            )
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ConfigError("duplicate algorithm ids")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.reference is None and self.algorithms:
            self.reference = self.algorithms[0]
        if self.reference not in self.algorithms:
            raise ConfigError(f"reference {self.reference!r} is not among the algorithms")
        needs_suite = any(ref.kind == "cec14" for ref in self.problems)
        if needs_suite and self.suite_seed is None and self.suite_data is None:
            raise ConfigError("suite problems need suite_seed or suite_data")


_BOOL_VALUES = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def parse_config(path: str | Path, overrides: dict | None = None) -> ExperimentSpec:
    """Read a ``key = value`` experiment config file.

    Lists are comma-separated; ``#`` starts a comment.  ``overrides``
    (typically CLI flags) replace file values key by key.
    """
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', found {line!r}")
        key, value = line.split("=", 1)
        entries[key.strip().lower()] = value.strip()
    if overrides:
        entries.update({k: str(v) for k, v in overrides.items() if v is not None})

    def as_list(value: str) -> list[str]:
        return [p.strip() for p in value.split(",") if p.strip()]

    def get_int(key: str, default: int) -> int:
        return int(entries.get(key, default))

    if "algorithms" not in entries:
        raise ConfigError("config must name the algorithms to run")
    if "problems" not in entries:
        raise ConfigError("config must name the problems to run")

    save_traces_raw = entries.get("save_traces", "true").lower()
    if save_traces_raw not in _BOOL_VALUES:
        raise ConfigError(f"save_traces must be a boolean, found {save_traces_raw!r}")

    return ExperimentSpec(
        algorithms=as_list(entries["algorithms"]),
        problems=parse_problem_tokens(as_list(entries["problems"])),
        runs=get_int("runs", 30),
        pop_size=get_int("pop_size", 30),
        max_iters=get_int("max_iters", 500),
        st=float(entries.get("st", 0.2)),
        base_seed=get_int("base_seed", 0),
        suite_seed=int(entries["suite_seed"]) if "suite_seed" in entries else None,
        suite_data=entries.get("suite_data"),
        output_dir=entries.get("output", "results"),
        reference=entries.get("reference"),
        workers=get_int("workers", 1),
        save_traces=_BOOL_VALUES[save_traces_raw],
    )


@functools.lru_cache(maxsize=8)
def _cached_suite(suite_data: str | None, suite_seed: int | None, dim: int) -> cec2014.Suite:
    return cec2014.load_or_generate(suite_data, suite_seed, dim)


def resolve_problem(ref: ProblemRef, suite_seed: int | None,
                    suite_data: str | None) -> Problem:
    if ref.kind == "design":
        return engineering.design_problems()[ref.name].problem
    return _cached_suite(suite_data, suite_seed, ref.dim).problem(ref.func_id)


def _run_cell(task: tuple):
    (algo, ref, run_idx, base_seed, pop_size, max_iters, st,
     suite_seed, suite_data, keep_trace) = task
    problem = resolve_problem(ref, suite_seed, suite_data)
    cfg = RunConfig(pop_size=pop_size, max_iters=max_iters, st=st,
                    seed=base_seed, algorithm=algo)
    cid = cell_seed(algo, ref.name, ref.dim, run_idx)
    rng = derive_stream(base_seed, cid)
    result = ALGORITHMS[algo](problem, cfg, rng)
    trace = result.trace if keep_trace else None
    return (algo, ref, run_idx, cid, result.best_fitness, result.evaluations, trace)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def trace_filename(algorithm: str, problem: str, dim: int, run_idx: int) -> str:
    return f"{algorithm}__{problem}__d{dim}__r{run_idx}.csv"


@dataclasses.dataclass
class ExperimentResult:
    output_dir: Path
    rows: list[tuple]
    table: ComparisonTable
    summary: dict


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """Execute every (algorithm, problem, run) cell and write the result set.

    Emits ``results.csv`` (one row per cell), ``summary.json`` (per-cell
    statistics, win/tie/loss ranking, overall effectiveness, Wilcoxon
    against the reference algorithm), and per-cell best-so-far traces
    under ``traces/``.  Output is identical regardless of worker count.
    """
    out = Path(spec.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    # Resolve every problem once up front so bad ids fail before any run.
    for ref in spec.problems:
        resolve_problem(ref, spec.suite_seed, spec.suite_data)

    tasks = [
        (algo, ref, run_idx, spec.base_seed, spec.pop_size, spec.max_iters,
         spec.st, spec.suite_seed, spec.suite_data, spec.save_traces)
        for algo in spec.algorithms
        for ref in spec.problems
        for run_idx in range(spec.runs)
    ]

    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            raw = list(pool.map(_run_cell, tasks, chunksize=4))
    else:
        raw = [_run_cell(t) for t in tasks]

    # Canonical order regardless of execution order.
    raw.sort(key=lambda r: (r[0], r[1].name, r[1].dim, r[2]))

    rows = []
    traces_dir = out / TRACES_DIR
    if spec.save_traces:
        traces_dir.mkdir(exist_ok=True)
    for algo, ref, run_idx, cid, best, evals, trace in raw:
        rows.append((algo, ref.name, ref.dim, run_idx, cid, best, evals))
        if trace is not None:
            tpath = traces_dir / trace_filename(algo, ref.name, ref.dim, run_idx)
            with tpath.open("w", encoding="utf-8", newline="") as fh:
                fh.write("iteration,best_so_far\n")
                fh.writelines(f"{i},{_fmt(v)}\n" for i, v in enumerate(trace))

    with (out / RESULTS_FILE).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULT_COLUMNS)
        for algo, name, dim, run_idx, cid, best, evals in rows:
            writer.writerow([algo, name, dim, run_idx, cid, _fmt(best), evals])

    table = _table_from_rows(rows)
    summary = build_summary(table, spec.reference)
    summary["config"] = {
        "algorithms": spec.algorithms,
        "problems": [f"{r.name}@{r.dim}" for r in spec.problems],
        "runs": spec.runs,
        "pop_size": spec.pop_size,
        "max_iters": spec.max_iters,
        "st": spec.st,
        "base_seed": spec.base_seed,
        "suite_seed": spec.suite_seed,
        "suite_data": spec.suite_data,
        "reference": spec.reference,
    }
    with (out / SUMMARY_FILE).open("w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")

    return ExperimentResult(output_dir=out, rows=rows, table=table, summary=summary)


def _table_from_rows(rows) -> ComparisonTable:
    table = ComparisonTable()
    for algo, name, dim, _run, _cid, best, _evals in rows:
        table.add(algo, name, int(dim), float(best))
    return table


def read_results(results_dir: str | Path) -> list[tuple]:
    path = Path(results_dir) / RESULTS_FILE
    if not path.exists():
        raise FileNotFoundError(f"no {RESULTS_FILE} in {results_dir}")
    rows = []
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for rec in reader:
            rows.append(
                (rec["algorithm"], rec["problem"], int(rec["dim"]), int(rec["run"]),
                 int(rec["seed"]), float(rec["best_fitness"]), int(rec["evaluations"]))
            )
    return rows


def build_summary(table: ComparisonTable, reference: str | None) -> dict:
    """Statistics block shared by ``run`` and ``report``."""
    algorithms = table.algorithms
    cells = []
    for problem, dim in table.case_keys:
        for algo in algorithms:
            s = summarize(table.runs(algo, problem, dim))
            cells.append({
                "algorithm": algo, "problem": problem, "dim": dim,
                "mean": s.mean, "std": s.std, "best": s.best, "worst": s.worst,
            })
    summary: dict = {"cells": cells, "algorithms": algorithms}

    if len(algorithms) >= 2:
        ranks = wtl_rank(table)
        n_cases = len(table.case_keys)
        summary["wtl"] = {
            a: {"wins": w, "ties": t, "losses": l} for a, (w, t, l) in ranks.items()
        }
        summary["overall_effectiveness"] = {
            a: {
                "percent": overall_effectiveness(n_cases, ranks[a][2]),
                "formatted": format_percent(overall_effectiveness(n_cases, ranks[a][2])),
            }
            for a in algorithms
        }
        if reference in algorithms:
            tests = []
            for other in algorithms:
                if other == reference:
                    continue
                ref_means = [table.mean(reference, p, d) for p, d in table.case_keys]
                other_means = [table.mean(other, p, d) for p, d in table.case_keys]
                entry = {"reference": reference, "against": other}
                try:
                    res = wilcoxon_signed_rank(other_means, ref_means)
                    entry.update({
                        "w_plus": res.w_plus, "w_minus": res.w_minus,
                        "p_value": res.p_value, "n": res.n, "method": res.method,
                        "significant_0.05": res.significant(0.05),
                        "significant_0.1": res.significant(0.1),
                        "reference_better": res.w_plus > res.w_minus,
                    })
                except ValueError as exc:
                    entry["error"] = str(exc)
                tests.append(entry)
            summary["wilcoxon"] = tests
    return summary


def emit_convergence(results_dir: str | Path, problem: str, dim: int,
                     out_path: str | Path | None = None):
    """Per-iteration mean best-so-far per algorithm, written as CSV.

    Averages the saved traces of every run for the selected
    (problem, dim); the output has one iteration column plus one value
    column per algorithm.  Returns ``(path, algorithms, means)``.
    """
    results_dir = Path(results_dir)
    rows = read_results(results_dir)
    selected = [r for r in rows if r[1] == problem and r[2] == dim]
    if not selected:
        raise FileNotFoundError(f"no results for problem {problem!r} at dim {dim}")
    algorithms = sorted({r[0] for r in selected})
    traces_dir = results_dir / TRACES_DIR
    means = {}
    for algo in algorithms:
        runs = sorted(r[3] for r in selected if r[0] == algo)
        traces = []
        for run_idx in runs:
            tpath = traces_dir / trace_filename(algo, problem, dim, run_idx)
            if not tpath.exists():
                raise FileNotFoundError(f"missing trace file {tpath}")
            traces.append(np.loadtxt(tpath, delimiter=",", skiprows=1, usecols=1))
        means[algo] = np.mean(np.stack(traces), axis=0)
    n_iters = len(next(iter(means.values())))
    if out_path is None:
        out_path = results_dir / f"convergence__{problem}__d{dim}.csv"
    out_path = Path(out_path)
    with out_path.open("w", encoding="utf-8", newline="") as fh:
        fh.write("iteration," + ",".join(algorithms) + "\n")
        for i in range(n_iters):
            fh.write(f"{i}," + ",".join(_fmt(means[a][i]) for a in algorithms) + "\n")
    return out_path, algorithms, means


def report(results_dir: str | Path, reference: str | None = None,
           plot: bool = True) -> dict:
    """Recompute the statistics report from a stored result set.

    Rewrites ``summary.json`` and, unless disabled, renders the ranking
    figures next to it.
    """
    results_dir = Path(results_dir)
    rows = read_results(results_dir)
    table = _table_from_rows(rows)
    if reference is None:
        reference = sorted({r[0] for r in rows})[0]
    summary = build_summary(table, reference)
    with (results_dir / SUMMARY_FILE).open("w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if plot and "wtl" in summary:
        from . import plotting

        plotting.save_wtl_figure(summary["wtl"], results_dir / "wtl.png")
        plotting.save_oe_figure(
            {a: v["percent"] for a, v in summary["overall_effectiveness"].items()},
            results_dir / "overall_effectiveness.png",
        )
    return summary
