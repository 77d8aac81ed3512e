#!/usr/bin/env python3
"""Plot the frontier datasets produced by make_figure_data.py.

Requires matplotlib.  Reads the CSVs from the data directory and writes one
PNG per dataset next to them.
"""

import argparse
import csv
import pathlib
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def load(path: pathlib.Path):
    with path.open() as fh:
        rows = [r for r in csv.reader(ln for ln in fh if not ln.startswith("#"))]
    header, data = rows[0], rows[1:]
    curves = defaultdict(list)
    key_cols = header[:-2]
    for row in data:
        key = tuple(row[:len(key_cols)])
        curves[key].append((float(row[-2]), float(row[-1])))
    return key_cols, curves


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--datadir", type=pathlib.Path, default=pathlib.Path("data"))
    args = ap.parse_args()
    for path in sorted(args.datadir.glob("*.csv")):
        key_cols, curves = load(path)
        fig, ax = plt.subplots(figsize=(5, 4))
        for key, pts in sorted(curves.items()):
            pts.sort()
            label = " ".join(f"{c}={float(v):g}" for c, v in zip(key_cols, key))
            ax.plot([p for p, _ in pts], [f for _, f in pts], label=label)
        ax.set_xlabel("worst-case probability p")
        ax.set_ylabel("worst-case fidelity F")
        ax.set_title(path.stem)
        ax.legend(fontsize=6)
        out = path.with_suffix(".png")
        fig.tight_layout()
        fig.savefig(out, dpi=150)
        plt.close(fig)
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
