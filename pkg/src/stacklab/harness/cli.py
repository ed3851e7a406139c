"""Command-line entry point.

``stacklab run --config cfg.yaml [--seeds 0,1,2] [--out dir] [--parallel k]``
runs a sweep and writes artifacts; ``stacklab run --suite acceptance`` runs
the built-in acceptance checks; ``stacklab report --in dir`` re-derives a
sweep's aggregates from its stored traces.  Exit codes: 0 success, 2 an
acceptance rule failed, 1 error.  ``STACKLAB_OUT`` overrides the output
root.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import ConfigError, load_config
from .sweep import aggregate, recompute_totals, run_sweep

RECOMPUTE_TOL = 1e-6


def _out_dir(cfg_out: str, override: str | None) -> str:
    root = os.environ.get("STACKLAB_OUT")
    out = override or cfg_out
    return os.path.join(root, out) if root else out


def cmd_run(args) -> int:
    if args.suite:
        if args.suite != "acceptance":
            print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
            return 1
        from .acceptance import run_acceptance_suite
        results = run_acceptance_suite(only=args.only)
        failed = [r for r in results if not r["passed"]]
        for r in results:
            status = "PASS" if r["passed"] else "FAIL"
            print(f"[{status}] {r['name']}: {r['detail']}")
        return 2 if failed else 0
    if not args.config:
        print("error: --config or --suite is required", file=sys.stderr)
        return 1
    try:
        cfg = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    seeds = [int(s) for s in args.seeds.split(",")] if args.seeds else None
    report = run_sweep(cfg, _out_dir(cfg.out, args.out), seeds=seeds,
                       parallel=args.parallel)
    agg = report["aggregate"]
    print(f"{cfg.label()}: mean regret {agg['mean_regret']:.3f} "
          f"over {agg['n_seeds']} seeds")
    return 0 if report["accept"]["passed"] else 2


def cmd_report(args) -> int:
    out = _out_dir(args.indir, None)
    path = os.path.join(out, "report.json")
    try:
        with open(path) as fh:
            report = json.load(fh)
        totals = recompute_totals(out, report)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    stored = [ep["total_regret"] for ep in report["episodes"]]
    drift = max(abs(a - b) for a, b in zip(stored, totals))
    if drift > RECOMPUTE_TOL:
        print(f"error: stored totals diverge from traces by {drift}",
              file=sys.stderr)
        return 1
    agg = aggregate(report["episodes"])
    print(json.dumps(agg, indent=2, sort_keys=True))
    return 0 if report["accept"]["passed"] else 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="stacklab", description="Stackelberg learning experiment runner")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a config sweep or a named suite")
    p_run.add_argument("--config", help="path to a YAML experiment config")
    p_run.add_argument("--seeds", help="comma-separated seed override")
    p_run.add_argument("--out", help="output directory override")
    p_run.add_argument("--parallel", type=int, default=1,
                       help="episode-level worker count")
    p_run.add_argument("--suite", help="named suite to run (acceptance)")
    p_run.add_argument("--only", help="comma-separated acceptance check names")
    p_run.set_defaults(func=cmd_run)

    p_rep = sub.add_parser("report", help="re-derive aggregates from artifacts")
    p_rep.add_argument("--in", dest="indir", required=True)
    p_rep.set_defaults(func=cmd_report)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # surface as exit code 1, not a traceback
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
