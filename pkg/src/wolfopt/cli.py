"""Command-line entry point.

Subcommands:

* ``run <config>`` executes an experiment described by a key=value
  config file (CLI flags override file values).
* ``report <results-dir>`` recomputes the statistics report and renders
  the ranking figures.
* ``curves <results-dir> --problem <id> --dim <d>`` emits the mean
  convergence CSV and figure for one problem.
* ``suite-gen --seed <s> --dim <d> --out <path>`` writes benchmark suite
  transform data to a portable text file.

Exit code 0 on success, nonzero with a diagnostic on stderr otherwise.
"""

from __future__ import annotations

import argparse
import sys

from . import cec2014, harness


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wolfopt",
        description="Grey-wolf-family optimizers with a benchmark experiment harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment from a config file")
    p_run.add_argument("config", help="path to the key=value experiment config")
    p_run.add_argument("--output", help="output directory (overrides config)")
    p_run.add_argument("--runs", type=int, help="runs per cell (overrides config)")
    p_run.add_argument("--workers", type=int, help="worker pool size (overrides config)")
    p_run.add_argument("--base-seed", type=int, dest="base_seed",
                       help="experiment base seed (overrides config)")

    p_rep = sub.add_parser("report", help="recompute statistics for stored results")
    p_rep.add_argument("results_dir")
    p_rep.add_argument("--reference", help="reference algorithm for the Wilcoxon tests")
    p_rep.add_argument("--no-plot", action="store_true", help="skip figure rendering")

    p_cur = sub.add_parser("curves", help="emit mean convergence data for one problem")
    p_cur.add_argument("results_dir")
    p_cur.add_argument("--problem", required=True, help="problem id, e.g. cec14-f5")
    p_cur.add_argument("--dim", required=True, type=int)
    p_cur.add_argument("--out", help="output CSV path")
    p_cur.add_argument("--no-plot", action="store_true", help="skip figure rendering")

    p_gen = sub.add_parser("suite-gen", help="generate benchmark suite data")
    p_gen.add_argument("--seed", required=True, type=int)
    p_gen.add_argument("--dim", required=True, type=int)
    p_gen.add_argument("--out", required=True)
    return parser


def _cmd_run(args) -> int:
    overrides = {
        "output": args.output,
        "runs": args.runs,
        "workers": args.workers,
        "base_seed": args.base_seed,
    }
    spec = harness.parse_config(args.config, overrides)
    result = harness.run_experiment(spec)
    print(f"wrote {len(result.rows)} result rows to {result.output_dir}")
    return 0


def _cmd_report(args) -> int:
    summary = harness.report(args.results_dir, reference=args.reference,
                             plot=not args.no_plot)
    if "overall_effectiveness" in summary:
        for algo in sorted(summary["overall_effectiveness"]):
            entry = summary["overall_effectiveness"][algo]
            wtl = summary["wtl"][algo]
            print(f"{algo}: ({wtl['wins']}/{wtl['ties']}/{wtl['losses']}) "
                  f"OE={entry['formatted']}")
    print(f"report written to {args.results_dir}")
    return 0


def _cmd_curves(args) -> int:
    path, _algorithms, means = harness.emit_convergence(
        args.results_dir, args.problem, args.dim, args.out
    )
    print(f"wrote {path}")
    if not args.no_plot:
        from . import plotting

        fig_path = path.with_suffix(".png")
        plotting.save_convergence_figure(means, args.problem, args.dim, fig_path)
        print(f"wrote {fig_path}")
    return 0


def _cmd_suite_gen(args) -> int:
    if args.dim not in cec2014.STANDARD_DIMS:
        print(f"note: dimension {args.dim} is outside the standard set "
              f"{cec2014.STANDARD_DIMS}", file=sys.stderr)
    suite = cec2014.generate_suite(args.seed, args.dim)
    cec2014.save_suite(suite, args.out)
    print(f"wrote suite data for dim {args.dim} to {args.out}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "report": _cmd_report,
    "curves": _cmd_curves,
    "suite-gen": _cmd_suite_gen,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
