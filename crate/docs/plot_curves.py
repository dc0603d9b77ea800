"""Plot curve samples written by `fucik trace`.

    fucik trace --preset sine:9.42477796076938 --k 2..4 --quadrant pm --out curves.csv
    python docs/plot_curves.py curves.csv -o curves.png

Needs matplotlib.
"""

import argparse
import csv
from collections import defaultdict

import matplotlib.pyplot as plt


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("csv", help="output of `fucik trace`")
    parser.add_argument("-o", "--output", help="image file; shows a window when omitted")
    parser.add_argument("--linear", action="store_true", help="linear axes instead of symmetric log")
    args = parser.parse_args()

    curves = defaultdict(list)
    with open(args.csv, newline="") as f:
        for row in csv.DictReader(f):
            key = (int(row["k"]), row["branch"], row["quadrant"])
            curves[key].append((float(row["a"]), float(row["b"])))

    fig, ax = plt.subplots(figsize=(6, 6))
    for (k, branch, quadrant), points in sorted(curves.items()):
        a, b = zip(*points)
        style = "-" if branch == "gt" else "--"
        ax.plot(a, b, style, label=f"C{k} {branch} {quadrant}")
    if not args.linear:
        ax.set_xscale("symlog", linthresh=1.0)
        ax.set_yscale("symlog", linthresh=1.0)
    ax.axhline(0, color="grey", lw=0.5)
    ax.axvline(0, color="grey", lw=0.5)
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    ax.legend(fontsize="small")
    fig.tight_layout()
    if args.output:
        fig.savefig(args.output, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
