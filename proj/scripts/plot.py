#!/usr/bin/env python3
"""Plot a sweep CSV written by `wpcn run`.

Usage: plot.py SWEEP.csv [OUT.png]

One line per (series, analytic column); Monte Carlo columns, when present,
are drawn as markers with 2-sigma error bars.
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

PAIRS = {
    "pi_eps_analytic": ("pi_eps_mc", "pi_eps_stderr"),
    "pi_eps": ("pi_eps_mc", "pi_eps_stderr"),
    "pi_s": ("pi_s_mc", "pi_s_stderr"),
    "p1_analytic": ("p1_mc", "p1_stderr"),
    "p2_analytic": ("p2_mc", "p2_stderr"),
    "t1_analytic": ("t1_mc", "t1_stderr"),
    "t2_analytic": ("t2_mc", "t2_stderr"),
    "f1_analytic": ("f1_mc", "f1_stderr"),
    "f2_analytic": ("f2_mc", "f2_stderr"),
    "p1_rayleigh_analytic": ("p1_mc", "p1_stderr"),
    "p2_rayleigh_analytic": ("p2_mc", "p2_stderr"),
}


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else path.rsplit(".", 1)[0] + ".png"
    df = pd.read_csv(path)
    axis = df.columns[1]
    curves = [c for c in PAIRS if c in df.columns]
    if "throughput" in path or "t1_analytic" in df.columns:
        curves = ["t1_analytic", "t2_analytic"]
    elif "pi_s" in df.columns:
        curves = ["pi_s"]

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for name, group in df.groupby("series", sort=False):
        for col in curves:
            line, = ax.plot(group[axis], group[col], "--", label=f"{name} {col}")
            mc, se = PAIRS[col]
            if mc in group.columns:
                ax.errorbar(group[axis], group[mc], yerr=2 * group[se], fmt="o", ms=3,
                            color=line.get_color())
    ax.set_xlabel(axis)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    main()
