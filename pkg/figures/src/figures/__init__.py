"""Log-log error-decay figures for decimation benchmark CSVs.

Reads the CSV emitted by ``altdec run`` and renders, for each recursion
order r, max reconstruction error against the decimation ratio on base-2
log axes, one series per quantization scheme. Each legend entry carries
the least-squares slope of its series, fitted with the same definition
the ``altdec slopes`` command uses, so the two agree to the last digit.

Rendering is a pure function of the CSV: fixed styles, fixed metadata,
no timestamps. Re-running on the same input produces byte-identical
files. The package talks to the harness only through the CSV; it never
imports it.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless; output must not depend on a display

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureError", "FigureJob", "Series", "load_series", "ols_line",
           "render", "main"]

# Wire schema of the harness CSV. Duplicated here on purpose: the CSV is
# the only interface between the two packages.
CSV_COLUMNS = ("scheme", "r", "rho", "m", "trial_count", "max_err",
               "mean_err", "u_inf_max", "bound_value", "bits_used",
               "status", "wall_ms")

# Statuses whose cells carry a usable error measurement. Must match the
# filter applied by the harness slope fit.
USABLE_STATUS = frozenset({"ok", "overloaded"})

FORMATS = ("svg", "png")

_SCHEME_RANK = {"plain": 0, "canonical": 1, "alternative": 2}
_STYLE = {
    "plain": ("#7f7f7f", "s"),
    "canonical": ("#d62728", "^"),
    "alternative": ("#1f77b4", "o"),
}
_EXTRA_STYLE = (("#2ca02c", "D"), ("#9467bd", "v"), ("#8c564b", "X"))
_LINESTYLES = ("-", "--", "-.", ":", (0, (3, 1, 1, 1)))

_RC = {
    "figure.figsize": (6.4, 4.4),
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.fonttype": "none",  # keep labels as text, not glyph paths
    "svg.hashsalt": "altdec-figures",  # stable ids for clip paths etc.
}
# matplotlib would otherwise stamp a creation date into SVG output and
# its own version string into PNG output.
_METADATA = {"svg": {"Date": None}, "png": {"Software": "altdec-figures"}}


class FigureError(Exception):
    """The input CSV cannot be turned into figures."""


@dataclass(frozen=True)
class FigureJob:
    input_csv: Path
    output_dir: Path
    formats: tuple[str, ...] = ("svg", "png")
    per_r: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "input_csv", Path(self.input_csv))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        fmts = tuple(self.formats)
        if not fmts:
            raise ValueError("formats must not be empty")
        unknown = [f for f in fmts if f not in FORMATS]
        if unknown:
            raise ValueError(f"unsupported formats: {', '.join(unknown)}; "
                             f"pick from {', '.join(FORMATS)}")
        if len(set(fmts)) != len(fmts):
            raise ValueError("duplicate format")
        object.__setattr__(self, "formats", fmts)


@dataclass(frozen=True)
class Series:
    """Usable cells of one (scheme, r) group, in file order."""

    scheme: str
    r: int
    rhos: tuple[float, ...]
    errs: tuple[float, ...]


def load_series(path: Path | str) -> list[Series]:
    """Parse a harness CSV into per-(scheme, r) series.

    A row is usable when its status is in USABLE_STATUS and max_err is a
    positive number. Groups with no usable rows are dropped; a surviving
    series needs at least two distinct ratios to support a slope fit.
    """
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise FigureError(f"cannot read {path}: {exc}") from exc
    groups: dict[tuple[str, int], list[tuple[float, float]]] = {}
    n_rows = 0
    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise FigureError(f"{path} is empty")
        missing = [c for c in CSV_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise FigureError(f"{path} is missing columns: "
                              f"{', '.join(missing)}")
        for lineno, row in enumerate(reader, start=2):
            n_rows += 1
            try:
                r = int(row["r"])
                rho = float(row["rho"])
                err = float(row["max_err"]) if row["max_err"] else None
            except (TypeError, ValueError) as exc:
                raise FigureError(f"{path} line {lineno}: {exc}") from exc
            if row["status"] in USABLE_STATUS and err is not None and err > 0:
                groups.setdefault((row["scheme"], r), []).append((rho, err))
    if n_rows == 0:
        raise FigureError(f"{path} has a header but no data rows")
    if not groups:
        raise FigureError(f"{path} has no plottable rows")
    series = []
    for (scheme, r), pts in sorted(groups.items()):
        if len({p[0] for p in pts}) < 2:
            raise FigureError(f"series {scheme} r={r} has fewer than "
                              "2 distinct ratios; cannot fit a slope")
        series.append(Series(scheme=scheme, r=r,
                             rhos=tuple(p[0] for p in pts),
                             errs=tuple(p[1] for p in pts)))
    return series


def ols_line(rhos, errs) -> tuple[float, float, float]:
    """Slope, intercept, r^2 of log2(err) against log2(rho).

    Same least-squares definition as the harness slope fit; identical
    inputs in identical order give identical floats.
    """
    xs = np.log2(np.asarray(rhos, dtype=float))
    ys = np.log2(np.asarray(errs, dtype=float))
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    total = ys - ys.mean()
    ss_tot = float(total @ total)
    r2 = 1.0 if ss_tot == 0 else 1.0 - float(resid @ resid) / ss_tot
    return float(slope), float(intercept), r2


def _draw(stem: str, group: list[Series], job: FigureJob) -> list[Path]:
    fig, ax = plt.subplots()
    ordered = sorted(group, key=lambda s: (_SCHEME_RANK.get(s.scheme, 3),
                                           s.scheme, s.r))
    for i, s in enumerate(ordered):
        color, marker = _STYLE.get(s.scheme,
                                   _EXTRA_STYLE[i % len(_EXTRA_STYLE)])
        style = "-" if job.per_r else _LINESTYLES[(s.r - 1) % len(_LINESTYLES)]
        slope = ols_line(s.rhos, s.errs)[0]
        name = s.scheme if job.per_r else f"{s.scheme} r={s.r}"
        pts = sorted(zip(s.rhos, s.errs))
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                color=color, marker=marker, markersize=5, linestyle=style,
                label=f"{name} (slope {slope:+.4f})")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log", base=2)
    ax.set_xlabel("decimation ratio rho")
    ax.set_ylabel("max reconstruction error")
    rs = sorted({s.r for s in group})
    ax.set_title(f"error decay, r = {rs[0]}" if len(rs) == 1
                 else "error decay, all orders")
    ax.legend(loc="lower left")
    fig.tight_layout()
    written = []
    for fmt in job.formats:
        out = job.output_dir / f"{stem}.{fmt}"
        fig.savefig(out, format=fmt, metadata=_METADATA[fmt])
        written.append(out)
    plt.close(fig)
    return written


def render(job: FigureJob) -> list[Path]:
    """Render decay figures, one per order (or one combined).

    Returns the written paths: orders ascending, formats in job order.
    """
    series = load_series(job.input_csv)
    job.output_dir.mkdir(parents=True, exist_ok=True)
    if job.per_r:
        figures = [(f"decay_r{r}", [s for s in series if s.r == r])
                   for r in sorted({s.r for s in series})]
    else:
        figures = [("decay_all", series)]
    written: list[Path] = []
    with plt.rc_context(_RC):
        for stem, group in figures:
            written.extend(_draw(stem, group, job))
    return written


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Render log-log error-decay figures from a benchmark "
                    "CSV produced by 'altdec run'.")
    parser.add_argument("--in", dest="input_csv", required=True,
                        metavar="CSV", help="input CSV path")
    parser.add_argument("--out", dest="output_dir", required=True,
                        metavar="DIR", help="directory for the images")
    parser.add_argument("--formats", default="svg,png",
                        help="comma-separated subset of svg,png")
    parser.add_argument("--combined", action="store_true",
                        help="one figure over all orders instead of one per r")
    args = parser.parse_args(argv)
    formats = tuple(f.strip() for f in args.formats.split(",") if f.strip())
    try:
        job = FigureJob(input_csv=Path(args.input_csv),
                        output_dir=Path(args.output_dir),
                        formats=formats, per_r=not args.combined)
        files = render(job)
    except (FigureError, ValueError, OSError) as exc:
        print(f"figures: {exc}", file=sys.stderr)
        return 2
    for path in files:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
