#!/usr/bin/env python3
"""Regenerate the four frontier datasets as CSV files.

Emits one file per figure into the output directory (default ./data):
three pure-pair transformation families and the semiclassical inversion
family.  Thin wrapper over the CLI so the files carry the exact
reproduction command in their header comment.
"""

import argparse
import pathlib
import subprocess
import sys

DATASETS = [
    ("transform_s060.csv",
     ["curve-transform", "--s-psi", "0.6",
      "--s-phi", "0,0.1,0.2,0.3,0.4,0.5,0.6"]),
    ("transform_s090.csv",
     ["curve-transform", "--s-psi", "0.9",
      "--s-phi", "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"]),
    ("transform_s099.csv",
     ["curve-transform", "--s-psi", "0.99",
      "--s-phi", "0.09,0.19,0.29,0.39,0.49,0.59,0.69,0.79,0.89,0.99"]),
    ("semiclassical.csv",
     ["curve-semiclassical", "--beta", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0"]),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=pathlib.Path, default=pathlib.Path("data"))
    ap.add_argument("--points", type=int, default=200)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, cmd in DATASETS:
        out = args.outdir / name
        subprocess.run([sys.executable, "-m", "probfid.cli", *cmd,
                        "--points", str(args.points), "--output", str(out)],
                       check=True)
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
