#!/usr/bin/env python3
"""Plot F, lambda and n_h_bar from a gstx sweep CSV.

    python3 samples/plot_sweep.py fig2a.csv fig2a.png
"""

import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main(src, dst):
    series = defaultdict(lambda: ([], defaultdict(list)))
    axis = None
    with open(src, newline="") as f:
        for row in csv.DictReader(f):
            axis = row["axis"]
            xs, ys = series[row["method"]]
            xs.append(float(row["axis_value"]))
            for col in ("F", "lambda", "n_h_bar"):
                ys[col].append(float(row[col]))

    fig, axes = plt.subplots(1, 3, figsize=(13, 3.8))
    for ax, col in zip(axes, ("F", "lambda", "n_h_bar")):
        for name, (xs, ys) in sorted(series.items()):
            style = "--" if name.startswith("closed_form") else "-"
            ax.plot(xs, ys[col], style, label=name)
        ax.set_xlabel(axis)
        ax.set_ylabel(col)
    axes[0].legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(dst, dpi=120)


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit("usage: plot_sweep.py <sweep.csv> <out.png>")
    main(sys.argv[1], sys.argv[2])
