"""Write the qubit fixed-F_C curves (F_C = 0.60 .. 0.95) to CSV and optionally plot them."""
import argparse
from pathlib import Path

from clonelab.frontier import DEFAULT_POINTS, figure1_dataset, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=DEFAULT_POINTS)
    ap.add_argument("--out", default="figure1.csv")
    ap.add_argument("--plot", help="also save a PNG here (needs matplotlib)")
    args = ap.parse_args()

    pts = figure1_dataset(args.points)
    Path(args.out).write_text(write_csv(pts))
    print(f"wrote {len(pts)} points to {args.out}")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        curves = {}
        for pt in pts:
            curves.setdefault(round(pt.fidelities[2], 9), []).append(pt.fidelities[:2])
        fig, ax = plt.subplots(figsize=(5, 5))
        for fc, xy in curves.items():
            fa, fb = zip(*xy)
            ax.plot(fa, fb, label=f"F_C = {fc:.2f}")
        ax.set_xlabel("F_A")
        ax.set_ylabel("F_B")
        ax.legend(fontsize=7)
        fig.savefig(args.plot, dpi=150, bbox_inches="tight")
        print(f"saved plot to {args.plot}")


if __name__ == "__main__":
    main()
