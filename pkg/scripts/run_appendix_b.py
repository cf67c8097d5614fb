#!/usr/bin/env python3
"""Run the full published-experiment grid (k=55, eta=65) and fit slopes.

Writes appendix_b.csv and appendix_b_slopes.csv under --out-dir. Takes a
few seconds single-threaded; use --jobs to parallelize across cells.
"""

import argparse
import sys
from pathlib import Path

from altdec.bench_cli import main as altdec


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "appendix_b.csv"
    rc = altdec(["run", "--preset", "appendix-b", "--out", str(csv_path),
                 "--jobs", str(args.jobs)])
    if rc:
        return rc
    return altdec(["slopes", "--in", str(csv_path),
                   "--out", str(out / "appendix_b_slopes.csv")])


if __name__ == "__main__":
    sys.exit(main())
