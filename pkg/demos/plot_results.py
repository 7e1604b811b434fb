"""
Plot CSV output of the command-line tool
========================================

Usage::

    mincutrank bench --n-range 5..15 --out bench.csv
    mincutrank experiment --name grid-sweep --out results
    python demos/plot_results.py bench.csv results/grid_sweep_summary.csv

Writes ``bench.png`` and ``grid_deviation.png`` next to the inputs.
"""

import csv
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def plot_bench(path):
    rows = read(path)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for backend in sorted({r["backend"] for r in rows}):
        pts = [(int(r["n"]), float(r["median_ms"]) / 1e3) for r in rows if r["backend"] == backend]
        ax.plot(*zip(*pts), marker="o", label=backend)
    ax.set_yscale("log")
    ax.set_xlabel("number of vertices")
    ax.set_ylabel("annealing time [s]")
    ax.legend()
    out = os.path.join(os.path.dirname(path) or ".", "bench.png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print("wrote", out)


def plot_grid(path):
    rows = read(path)
    pts = sorted((int(r["n"]), float(r["mean_deviation"])) for r in rows)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot([int(round(n**0.5)) for n, _ in pts], [d for _, d in pts], marker="s")
    ax.set_xlabel("grid side k")
    ax.set_ylabel("mean best rank - k")
    out = os.path.join(os.path.dirname(path) or ".", "grid_deviation.png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print("wrote", out)


if __name__ == "__main__":
    for arg in sys.argv[1:]:
        header = read(arg)[0]
        if "median_ms" in header:
            plot_bench(arg)
        elif "mean_deviation" in header:
            plot_grid(arg)
        else:
            print("skipping", arg, "(unrecognised columns)")
