"""Plot request: which files, which columns, how to draw them."""

from __future__ import annotations

import csv
import glob
import os
from dataclasses import dataclass, field


class PlotError(ValueError):
    """Bad plot request or malformed input artifact."""


@dataclass
class PlotSpec:
    inputs: str                      # glob over harness CSV files
    out: str                         # output image path
    x: str = "t"
    y: str = "cumulative_regret"
    group_by: tuple = field(default_factory=tuple)
    logx: bool = False
    logy: bool = False

    def resolve_inputs(self) -> list:
        paths = sorted(glob.glob(self.inputs))
        if not paths:
            raise PlotError(f"no input files match {self.inputs!r}")
        return paths

    def required_columns(self) -> tuple:
        return (self.x, self.y) + tuple(self.group_by)


def read_csv_columns(path: str, columns) -> dict:
    """Read the named columns of one harness CSV as lists of strings."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise PlotError(f"{path}: empty file")
        for col in columns:
            if col not in header:
                raise PlotError(f"{path}: missing column {col!r} "
                                f"(have {header})")
        idx = {col: header.index(col) for col in columns}
        out = {col: [] for col in columns}
        for row in reader:
            for col in columns:
                out[col].append(row[idx[col]])
    return out


def file_digests(paths) -> dict:
    import hashlib
    out = {}
    for p in paths:
        h = hashlib.sha256()
        with open(p, "rb") as fh:
            h.update(fh.read())
        out[p] = h.hexdigest()
    return out


def assert_unmodified(before: dict) -> None:
    after = file_digests(before)
    changed = [p for p in before if before[p] != after[p]]
    if changed:
        raise PlotError(f"plotting must not modify inputs; changed: {changed}")


def ensure_out_dir(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
