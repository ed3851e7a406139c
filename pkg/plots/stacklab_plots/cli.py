"""Command-line entry point: ``plot regret|scaling --in <dir> --out <png>``."""

from __future__ import annotations

import argparse
import os
import sys

from .regret import plot_regret
from .scaling import plot_scaling
from .spec import PlotError, PlotSpec


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render sweep artifacts as static images.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="in_dir", required=True,
                        help="sweep output directory (or a file glob)")
    common.add_argument("--out", required=True, help="output image path")
    common.add_argument("--logx", action="store_true")
    common.add_argument("--logy", action="store_true")

    p_regret = sub.add_parser("regret", parents=[common],
                              help="per-round cumulative regret curves")
    p_regret.add_argument("--x", default="t")
    p_regret.add_argument("--y", default="cumulative_regret")
    p_regret.add_argument("--group-by", default="",
                          help="comma-separated grouping columns")

    p_scaling = sub.add_parser("scaling", parents=[common],
                               help="measured cost vs fitted scaling form")
    p_scaling.add_argument("--x", default="scale")
    p_scaling.add_argument("--y", default="cost")
    return parser


def _resolve_glob(in_dir: str, default_pattern: str) -> str:
    if os.path.isdir(in_dir):
        return os.path.join(in_dir, default_pattern)
    return in_dir


def entry(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "regret":
            group_by = tuple(c for c in args.group_by.split(",") if c)
            spec = PlotSpec(inputs=_resolve_glob(args.in_dir, "seed*.csv"),
                            out=args.out, x=args.x, y=args.y,
                            group_by=group_by,
                            logx=args.logx, logy=args.logy)
            written = plot_regret(spec)
        else:
            spec = PlotSpec(inputs=_resolve_glob(args.in_dir, "report.json"),
                            out=args.out, x=args.x, y=args.y,
                            logx=args.logx, logy=args.logy)
            written = plot_scaling(spec)
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(entry())
