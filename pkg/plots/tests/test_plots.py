"""Plot scripts against fabricated sweep artifacts.

The fixtures mirror the harness's on-disk formats (per-seed round CSVs and
report.json) without importing the simulation package, so these tests pin
down the artifact contract from the consumer side.
"""

import csv
import hashlib
import json
import os

import numpy as np
import pytest

from stacklab_plots import PlotSpec, plot_regret, plot_scaling
from stacklab_plots.cli import entry
from stacklab_plots.spec import PlotError, read_csv_columns


def write_seed_csv(path, seed, T=50, gamma=None):
    rng = np.random.default_rng(seed)
    cum = np.cumsum(rng.uniform(0.0, 1.0, size=T))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["t", "action", "payoff", "cumulative_regret"]
        if gamma is not None:
            header.append("gamma")
        writer.writerow(header)
        for t in range(1, T + 1):
            row = [t, 0.5, 0.3, f"{cum[t - 1]:.6f}"]
            if gamma is not None:
                row.append(gamma)
            writer.writerow(row)


def write_report(path, form="nlogn", points=None, fit=True):
    report = {"aggregate": {"mean_regret": 1.0}, "episodes": []}
    if fit:
        report["fit"] = {"a": 1.0, "b": 2.5, "r2": 0.987, "form": form}
    if points is None:
        points = [{"x": n, "y": 1.0 + 2.5 * n * np.log(n)}
                  for n in (2, 5, 10, 25, 50)]
    report["points"] = points
    with open(path, "w") as fh:
        json.dump(report, fh)


def digest_dir(d):
    out = {}
    for name in sorted(os.listdir(d)):
        p = os.path.join(d, name)
        if os.path.isfile(p):
            out[name] = hashlib.sha256(open(p, "rb").read()).hexdigest()
    return out


@pytest.fixture
def sweep_dir(tmp_path):
    d = tmp_path / "sweep"
    d.mkdir()
    for s in range(5):
        write_seed_csv(d / f"seed{s}.csv", seed=s)
    write_report(d / "report.json")
    return d


def test_regret_multi_seed(sweep_dir, tmp_path):
    out = tmp_path / "regret.png"
    spec = PlotSpec(inputs=str(sweep_dir / "seed*.csv"), out=str(out))
    written = plot_regret(spec)
    assert written == [str(out)]
    assert out.exists() and out.stat().st_size > 0


def test_regret_single_seed_no_band(sweep_dir, tmp_path, monkeypatch):
    # single series: only the line artist, no fill_between band
    import matplotlib.axes
    fills = []
    orig = matplotlib.axes.Axes.fill_between
    monkeypatch.setattr(matplotlib.axes.Axes, "fill_between",
                        lambda self, *a, **k: fills.append(1) or
                        orig(self, *a, **k))
    spec = PlotSpec(inputs=str(sweep_dir / "seed0.csv"),
                    out=str(tmp_path / "one.png"))
    plot_regret(spec)
    assert fills == []


def test_regret_band_used_for_many_seeds(sweep_dir, tmp_path, monkeypatch):
    import matplotlib.axes
    fills = []
    orig = matplotlib.axes.Axes.fill_between
    monkeypatch.setattr(matplotlib.axes.Axes, "fill_between",
                        lambda self, *a, **k: fills.append(a) or
                        orig(self, *a, **k))
    spec = PlotSpec(inputs=str(sweep_dir / "seed*.csv"),
                    out=str(tmp_path / "many.png"))
    plot_regret(spec)
    assert len(fills) == 1
    # band is the min/max envelope of the stacked series
    _, lo, hi = fills[0]
    assert np.all(np.asarray(lo) <= np.asarray(hi))


def test_regret_grouping(tmp_path):
    d = tmp_path / "grouped"
    d.mkdir()
    for s, g in [(0, 0.5), (1, 0.5), (2, 0.9), (3, 0.9)]:
        write_seed_csv(d / f"seed{s}.csv", seed=s, gamma=g)
    out = tmp_path / "curves.png"
    spec = PlotSpec(inputs=str(d / "seed*.csv"), out=str(out),
                    group_by=("gamma",))
    written = plot_regret(spec)
    assert sorted(os.path.basename(p) for p in written) == \
        ["curves_0.5.png", "curves_0.9.png"]


def test_regret_missing_column_names_file_and_column(sweep_dir, tmp_path):
    spec = PlotSpec(inputs=str(sweep_dir / "seed*.csv"),
                    out=str(tmp_path / "x.png"), y="no_such_column")
    with pytest.raises(PlotError) as err:
        plot_regret(spec)
    assert "no_such_column" in str(err.value)
    assert "seed0.csv" in str(err.value)


def test_regret_no_matching_inputs(tmp_path):
    spec = PlotSpec(inputs=str(tmp_path / "nothing*.csv"),
                    out=str(tmp_path / "x.png"))
    with pytest.raises(PlotError):
        plot_regret(spec)


def test_inputs_unmodified(sweep_dir, tmp_path):
    before = digest_dir(sweep_dir)
    plot_regret(PlotSpec(inputs=str(sweep_dir / "seed*.csv"),
                         out=str(tmp_path / "a.png")))
    plot_scaling(PlotSpec(inputs=str(sweep_dir / "report.json"),
                          out=str(tmp_path / "b.png"),
                          x="n", y="queries"))
    assert digest_dir(sweep_dir) == before


def test_scaling_plot(sweep_dir, tmp_path):
    out = tmp_path / "scaling.png"
    spec = PlotSpec(inputs=str(sweep_dir / "report.json"), out=str(out),
                    x="n", y="queries")
    assert plot_scaling(spec) == [str(out)]
    assert out.stat().st_size > 0


def test_scaling_requires_fit_section(tmp_path):
    write_report(tmp_path / "report.json", fit=False)
    spec = PlotSpec(inputs=str(tmp_path / "report.json"),
                    out=str(tmp_path / "x.png"))
    with pytest.raises(PlotError, match="fit"):
        plot_scaling(spec)


def test_scaling_null_fit_rejected(tmp_path):
    # the harness writes "fit": null for plain sweeps — that is not plottable
    report = {"fit": None, "points": [{"x": 1, "y": 1}]}
    with open(tmp_path / "report.json", "w") as fh:
        json.dump(report, fh)
    spec = PlotSpec(inputs=str(tmp_path / "report.json"),
                    out=str(tmp_path / "x.png"))
    with pytest.raises(PlotError, match="fit"):
        plot_scaling(spec)


def test_scaling_empty_points(tmp_path):
    write_report(tmp_path / "report.json", points=[])
    spec = PlotSpec(inputs=str(tmp_path / "report.json"),
                    out=str(tmp_path / "x.png"))
    with pytest.raises(PlotError, match="points"):
        plot_scaling(spec)


def test_cli_regret(sweep_dir, tmp_path, capsys):
    out = tmp_path / "cli_regret.png"
    code = entry(["regret", "--in", str(sweep_dir), "--out", str(out)])
    assert code == 0
    assert str(out) in capsys.readouterr().out
    assert out.exists()


def test_cli_scaling(sweep_dir, tmp_path):
    out = tmp_path / "cli_scaling.png"
    code = entry(["scaling", "--in", str(sweep_dir), "--out", str(out),
                  "--x", "n", "--y", "queries"])
    assert code == 0
    assert out.exists()


def test_cli_empty_sweep_nonzero_exit(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    code = entry(["scaling", "--in", str(empty),
                  "--out", str(tmp_path / "x.png")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_cli_missing_column_nonzero_exit(sweep_dir, tmp_path, capsys):
    code = entry(["regret", "--in", str(sweep_dir),
                  "--out", str(tmp_path / "x.png"),
                  "--y", "bogus"])
    assert code == 1
    err = capsys.readouterr().err
    assert "bogus" in err


def test_read_csv_columns_roundtrip(tmp_path):
    write_seed_csv(tmp_path / "s.csv", seed=7, T=10)
    data = read_csv_columns(str(tmp_path / "s.csv"),
                            ["t", "cumulative_regret"])
    assert data["t"] == [str(i) for i in range(1, 11)]
    cum = np.asarray(data["cumulative_regret"], dtype=float)
    assert np.all(np.diff(cum) >= 0)
