"""Scaling plots: measured costs with the fitted theorem curve overlaid."""

from __future__ import annotations

import json
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .spec import (PlotSpec, PlotError, assert_unmodified, ensure_out_dir,
                   file_digests)

# Same named forms the harness fits against; custom forms are plotted
# through the measured points only.
FORMS = {
    "linear": lambda x: x,
    "log": lambda x: math.log(x),
    "nlogn": lambda x: x * math.log(x),
    "sqrt_t_log_t": lambda x: math.sqrt(x * math.log(x)),
    "cubic": lambda x: x ** 3,
}


def _load_report(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise PlotError(f"{path}: cannot read report ({exc})") from exc


def plot_scaling(spec: PlotSpec) -> list:
    """Scatter the report's scale points and overlay its fitted curve."""
    paths = spec.resolve_inputs()
    before = file_digests(paths)
    written = []
    for path in paths:
        report = _load_report(path)
        fit = report.get("fit")
        if not fit:
            raise PlotError(f"{path}: report has no fit section")
        for field in ("a", "b", "r2", "form"):
            if field not in fit:
                raise PlotError(f"{path}: fit section missing {field!r}")
        points = report.get("points") or []
        if not points:
            raise PlotError(f"{path}: report has no scale points")
        x = np.array([p["x"] for p in points], dtype=float)
        y = np.array([p["y"] for p in points], dtype=float)

        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        ax.scatter(x, y, color="C0", zorder=3, label="measured")
        form = FORMS.get(fit["form"])
        if form is not None:
            xs = np.linspace(x.min(), x.max(), 200)
            ys = fit["a"] + fit["b"] * np.array([form(v) for v in xs])
            ax.plot(xs, ys, color="C1",
                    label=f"fit: a + b·{fit['form']}")
        ax.annotate(f"R² = {fit['r2']:.4f}", xy=(0.05, 0.92),
                    xycoords="axes fraction")
        if spec.logx:
            ax.set_xscale("log")
        if spec.logy:
            ax.set_yscale("log")
        ax.set_xlabel(spec.x)
        ax.set_ylabel(spec.y)
        ax.legend(loc="best")
        out_path = spec.out
        if len(paths) > 1:
            root, ext = spec.out.rsplit(".", 1)
            out_path = f"{root}_{len(written)}.{ext}"
        ensure_out_dir(out_path)
        fig.tight_layout()
        fig.savefig(out_path, dpi=150)
        plt.close(fig)
        written.append(out_path)

    assert_unmodified(before)
    return written
