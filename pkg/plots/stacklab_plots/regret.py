"""Cumulative-regret curves from per-seed sweep CSVs.

One image per group: mean curve across seeds plus a band covering the
min/max inter-seed envelope.  A single-seed group gets a bare line.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .spec import (PlotSpec, PlotError, assert_unmodified, ensure_out_dir,
                   file_digests, read_csv_columns)


def _group_key(data: dict, group_by) -> tuple:
    key = []
    for col in group_by:
        vals = data[col]
        if not vals:
            raise PlotError(f"cannot group an empty series by {col!r}")
        key.append(vals[0])
    return tuple(key)


def _group_out_path(out: str, key: tuple) -> str:
    if not key:
        return out
    root, ext = os.path.splitext(out)
    suffix = "_".join(str(v) for v in key)
    return f"{root}_{suffix}{ext or '.png'}"


def plot_regret(spec: PlotSpec) -> list:
    """Render the regret curves described by ``spec``; returns image paths."""
    paths = spec.resolve_inputs()
    before = file_digests(paths)
    columns = spec.required_columns()

    groups = {}
    for path in paths:
        data = read_csv_columns(path, columns)
        key = _group_key(data, spec.group_by)
        x = np.asarray(data[spec.x], dtype=float)
        y = np.asarray(data[spec.y], dtype=float)
        groups.setdefault(key, []).append((path, x, y))

    written = []
    for key, series in sorted(groups.items()):
        x0 = series[0][1]
        for path, x, _ in series[1:]:
            if len(x) != len(x0) or not np.array_equal(x, x0):
                raise PlotError(
                    f"{path}: {spec.x!r} grid differs from {series[0][0]}")
        ys = np.stack([y for _, _, y in series])

        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        ax.plot(x0, ys.mean(axis=0), color="C0",
                label=f"mean of {len(series)} seeds"
                if len(series) > 1 else "single seed")
        if len(series) > 1:
            ax.fill_between(x0, ys.min(axis=0), ys.max(axis=0),
                            color="C0", alpha=0.25, label="min/max envelope")
        if spec.logx:
            ax.set_xscale("log")
        if spec.logy:
            ax.set_yscale("log")
        ax.set_xlabel(spec.x)
        ax.set_ylabel(spec.y)
        title = ", ".join(f"{c}={v}" for c, v in zip(spec.group_by, key))
        if title:
            ax.set_title(title)
        ax.legend(loc="best")
        out_path = _group_out_path(spec.out, key)
        ensure_out_dir(out_path)
        fig.tight_layout()
        fig.savefig(out_path, dpi=150)
        plt.close(fig)
        written.append(out_path)

    assert_unmodified(before)
    return written
