"""Compare closed-form cubic roots with a dense eigensolve over the weight simplex."""
import argparse
import time

import numpy as np

from clonelab.eigen import eigenvalues
from clonelab.frontier import simplex_grid
from clonelab.oracle import build_Ltilde_triplicator
from clonelab.triplicator import TriplicatorWeights, solve_triplicator


def spectrum_error(w, d):
    sol = solve_triplicator(TriplicatorWeights(*w, d))
    dense = eigenvalues(build_Ltilde_triplicator(*w, d))
    expected = ([x for x in sol.lambda_plus for _ in range(d * (d + 1) // 2)]
                + [x for x in sol.lambda_minus for _ in range(d * (d - 1) // 2)]
                + [0.0] * (d**4 - 3 * d * d))
    return float(np.max(np.abs(dense - np.sort(expected)[::-1])))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--step", type=float, default=0.1)
    args = ap.parse_args()

    for d in args.dims:
        t0 = time.perf_counter()
        errs = [spectrum_error(w, d) for w in simplex_grid(args.step)]
        print(f"d={d}  points={len(errs)}  max|dense - analytic|={max(errs):.3e}"
              f"  ({time.perf_counter() - t0:.2f} s)")


if __name__ == "__main__":
    main()
