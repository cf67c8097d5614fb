"""Figure rendering against live harness output and synthetic CSVs.

The harness is exercised through its command line only; nothing here
imports altdec. That keeps the CSV as the sole interface between the
two packages, in tests as well as in the library.
"""

from __future__ import annotations

import csv
import subprocess
import sys
from pathlib import Path

import pytest

from figures import (CSV_COLUMNS, FigureError, FigureJob, Series,
                     load_series, main, ols_line, render)


def _altdec(*args: str) -> str:
    proc = subprocess.run([sys.executable, "-m", "altdec.bench_cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


@pytest.fixture(scope="session")
def desk_csv(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("bench") / "desk.csv"
    _altdec("run", "--preset", "desk", "--out", str(path))
    return path


@pytest.fixture(scope="session")
def desk_slopes(desk_csv) -> dict[tuple[str, int], tuple[float, float, float]]:
    text = _altdec("slopes", "--in", str(desk_csv))
    rows = list(csv.DictReader(text.splitlines()))
    assert rows, "slopes output is empty"
    return {(row["scheme"], int(row["r"])):
            (float(row["slope"]), float(row["intercept"]),
             float(row["r_squared"]))
            for row in rows}


def _write_csv(path: Path, rows: list[dict]) -> Path:
    defaults = {"m": "8", "trial_count": "3", "mean_err": "0.01",
                "u_inf_max": "0.3", "bound_value": "", "bits_used": "",
                "status": "ok", "wall_ms": "0"}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS,
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({**defaults, **row})
    return path


def _cell(scheme: str, r: int, rho: int, err: str, **extra) -> dict:
    return {"scheme": scheme, "r": str(r), "rho": str(rho),
            "max_err": err, **extra}


# ---------------------------------------------------------------------------
# job validation

def test_figure_job_validation(tmp_path):
    for formats in ((), ("jpg",), ("svg", "pdf"), ("svg", "svg")):
        with pytest.raises(ValueError):
            FigureJob(input_csv=tmp_path / "a.csv",
                      output_dir=tmp_path, formats=formats)
    job = FigureJob(input_csv=str(tmp_path / "a.csv"),
                    output_dir=str(tmp_path))
    assert isinstance(job.input_csv, Path)
    assert job.formats == ("svg", "png")
    assert job.per_r


# ---------------------------------------------------------------------------
# desk preset, the real interface

def test_desk_render_five_figures(desk_csv, desk_slopes, tmp_path):
    out = tmp_path / "figs"
    files = render(FigureJob(input_csv=desk_csv, output_dir=out))
    names = [f.name for f in files]
    assert names == [f"decay_r{r}.{ext}"
                     for r in (1, 2, 3, 4, 5) for ext in ("svg", "png")]
    assert all(f.exists() and f.stat().st_size > 0 for f in files)

    series = load_series(desk_csv)
    assert {(s.scheme, s.r) for s in series} == set(desk_slopes)
    for s in series:
        slope, intercept, r2 = ols_line(s.rhos, s.errs)
        want = desk_slopes[(s.scheme, s.r)]
        assert abs(slope - want[0]) <= 1e-9
        assert abs(intercept - want[1]) <= 1e-9
        assert abs(r2 - want[2]) <= 1e-9

    # the legend text carries the same slopes the harness reports
    for r in (1, 2, 3, 4, 5):
        svg = (out / f"decay_r{r}.svg").read_text(encoding="utf-8")
        for scheme in ("plain", "canonical", "alternative"):
            slope = desk_slopes[(scheme, r)][0]
            assert f"{scheme} (slope {slope:+.4f})" in svg


def test_render_deterministic(desk_csv, tmp_path):
    job_a = FigureJob(input_csv=desk_csv, output_dir=tmp_path / "a")
    job_b = FigureJob(input_csv=desk_csv, output_dir=tmp_path / "b")
    files_a = render(job_a)
    files_b = render(job_b)
    assert [f.name for f in files_a] == [f.name for f in files_b]
    for fa, fb in zip(files_a, files_b):
        assert fa.read_bytes() == fb.read_bytes(), fa.name


def test_combined_figure(desk_csv, tmp_path):
    job = FigureJob(input_csv=desk_csv, output_dir=tmp_path,
                    formats=("svg",), per_r=False)
    files = render(job)
    assert [f.name for f in files] == ["decay_all.svg"]
    svg = files[0].read_text(encoding="utf-8")
    assert "alternative r=2" in svg
    assert "plain r=5" in svg


# ---------------------------------------------------------------------------
# synthetic CSVs

def test_single_scheme_one_series(tmp_path):
    # err = 1/rho on rho in {2,4,8}: the log2 fit is exactly slope -1
    path = _write_csv(tmp_path / "one.csv", [
        _cell("alternative", 1, 2, "0.5"),
        _cell("alternative", 1, 4, "0.25"),
        _cell("alternative", 1, 8, "0.125"),
    ])
    files = render(FigureJob(input_csv=path, output_dir=tmp_path / "figs",
                             formats=("svg",)))
    assert [f.name for f in files] == ["decay_r1.svg"]
    svg = files[0].read_text(encoding="utf-8")
    assert "alternative (slope -1.0000)" in svg
    assert "canonical" not in svg

    (s,) = load_series(path)
    slope, intercept, r2 = ols_line(s.rhos, s.errs)
    assert abs(slope + 1.0) < 1e-12
    assert abs(intercept) < 1e-12
    assert r2 == 1.0


def test_unusable_rows_are_filtered(tmp_path):
    path = _write_csv(tmp_path / "mixed.csv", [
        _cell("alternative", 1, 2, "0.5"),
        _cell("alternative", 1, 4, "0.25"),
        _cell("alternative", 1, 8, "", status="rank_deficient"),
        _cell("canonical", 1, 2, "", status="rank_deficient"),
        _cell("canonical", 1, 4, "", status="rank_deficient"),
        _cell("plain", 1, 2, "0.4", status="overloaded"),
        _cell("plain", 1, 4, "0.2"),
    ])
    series = load_series(path)
    assert {(s.scheme, s.r) for s in series} == {("alternative", 1),
                                                 ("plain", 1)}
    alt = next(s for s in series if s.scheme == "alternative")
    assert alt.rhos == (2.0, 4.0)
    svg = render(FigureJob(input_csv=path, output_dir=tmp_path / "figs",
                           formats=("svg",)))[0].read_text(encoding="utf-8")
    assert "canonical" not in svg


def test_series_needs_two_distinct_ratios(tmp_path):
    path = _write_csv(tmp_path / "thin.csv", [
        _cell("alternative", 1, 2, "0.5"),
        _cell("alternative", 1, 2, "0.4"),
        _cell("plain", 1, 2, "0.5"),
        _cell("plain", 1, 4, "0.25"),
    ])
    with pytest.raises(FigureError, match="fewer than 2"):
        load_series(path)


def test_fit_matches_manual_least_squares(tmp_path):
    # noisy series: compare against the closed-form 2x2 normal equations
    rhos = (2.0, 4.0, 8.0, 16.0)
    errs = (0.51, 0.27, 0.122, 0.068)
    import math
    xs = [math.log2(v) for v in rhos]
    ys = [math.log2(v) for v in errs]
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    want_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    want_intercept = (sy - want_slope * sx) / n
    slope, intercept, r2 = ols_line(rhos, errs)
    assert abs(slope - want_slope) < 1e-12
    assert abs(intercept - want_intercept) < 1e-12
    assert 0.9 < r2 < 1.0


# ---------------------------------------------------------------------------
# command line

def test_cli_happy_path(desk_csv, tmp_path, capsys):
    out = tmp_path / "figs"
    rc = main(["--in", str(desk_csv), "--out", str(out), "--formats", "svg"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert [Path(line).name for line in lines] == [
        f"decay_r{r}.svg" for r in (1, 2, 3, 4, 5)]
    assert all(Path(line).exists() for line in lines)


def test_cli_rejects_bad_input(tmp_path, capsys):
    out = str(tmp_path / "figs")

    empty = tmp_path / "empty.csv"
    empty.write_text("")
    header_only = tmp_path / "header.csv"
    header_only.write_text(",".join(CSV_COLUMNS) + "\n")
    wrong_schema = tmp_path / "schema.csv"
    wrong_schema.write_text("scheme,r,rho\nalternative,1,2\n")
    junk = _write_csv(tmp_path / "junk.csv", [
        _cell("alternative", 1, 2, "bogus"),
        _cell("alternative", 1, 4, "0.25"),
    ])

    cases = [
        (["--in", str(empty), "--out", out], "is empty"),
        (["--in", str(header_only), "--out", out], "no data rows"),
        (["--in", str(wrong_schema), "--out", out], "missing columns"),
        (["--in", str(junk), "--out", out], "line 2"),
        (["--in", str(tmp_path / "absent.csv"), "--out", out], "cannot read"),
        (["--in", str(header_only), "--out", out, "--formats", "jpg"],
         "unsupported"),
        (["--in", str(header_only), "--out", out, "--formats", ""],
         "must not be empty"),
    ]
    for argv, fragment in cases:
        rc = main(argv)
        err = capsys.readouterr().err
        assert rc == 2, argv
        assert err.startswith("figures:"), argv
        assert fragment in err, (argv, err)
