#!/usr/bin/env python3
"""Run the operator-identity verification suite.

Exits 2 when any row fails. Three stated-form rows fail by design (their
corrected-form rows pass); see the README for the breakdown.
"""

import argparse
import sys

from altdec.bench_cli import main as altdec


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-m", type=int, default=24)
    parser.add_argument("--out", help="JSON report path (default stdout)")
    args = parser.parse_args()
    argv = ["verify", "--max-m", str(args.max_m)]
    if args.out:
        argv += ["--out", args.out]
    return altdec(argv)


if __name__ == "__main__":
    sys.exit(main())
