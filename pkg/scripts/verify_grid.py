"""Run the brute-force certification on a few machines and print the reports."""
import argparse

from clonelab.duplicator import DuplicatorWeights, duplicator_choi, solve_duplicator
from clonelab.oracle import build_L_duplicator, build_L_triplicator, clone_L, verify
from clonelab.triplicator import TriplicatorWeights, solve_triplicator, triplicator_choi


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for d in (2, 3):
        for p in (0.5, 0.8):
            S = duplicator_choi(solve_duplicator(DuplicatorWeights(p, d)))
            rep = verify(S, build_L_duplicator(p, d), [clone_L(d, 2, j) for j in (1, 2)],
                         args.samples, args.seed)
            print(f"duplicator  d={d} p={p}: {rep.to_json()}")
        for w in ((1 / 3, 1 / 3, 1 / 3), (0.6, 0.25, 0.15)):
            S = triplicator_choi(solve_triplicator(TriplicatorWeights(*w, d)))
            rep = verify(S, build_L_triplicator(*w, d), [clone_L(d, 3, j) for j in (1, 2, 3)],
                         args.samples, args.seed)
            print(f"triplicator d={d} w={tuple(round(x, 3) for x in w)}: {rep.to_json()}")


if __name__ == "__main__":
    main()
