#!/usr/bin/env python3
"""Run the desk-scale grid and fit decay slopes.

Writes desk.csv and desk_slopes.csv under --out-dir.
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
    csv_path = out / "desk.csv"
    rc = altdec(["run", "--preset", "desk", "--out", str(csv_path),
                 "--jobs", str(args.jobs)])
    if rc:
        return rc
    return altdec(["slopes", "--in", str(csv_path),
                   "--out", str(out / "desk_slopes.csv")])


if __name__ == "__main__":
    sys.exit(main())
