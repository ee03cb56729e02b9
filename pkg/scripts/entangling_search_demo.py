"""Search for entangling unitaries below and above the single-cut threshold.

For each (n, k) it runs the randomized search on the DQC1 input at a few
alpha values and reports the best negativity found. Above 1 - 2^-k every
entry must be zero; below it a nonzero value is a certificate.
"""

import argparse

from dqc1ent.bipartite import Bipartition
from dqc1ent.search import search_entangling_unitary
from dqc1ent.spectrum import dqc1_alpha_threshold


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    print(f"{'n':>2} {'k':>2} {'alpha':>6} {'threshold':>9} {'negativity':>11}")
    for n, k in [(1, 1), (2, 1), (3, 1), (4, 2)]:
        thr = dqc1_alpha_threshold(k)
        bp = Bipartition(n + 1, tuple(range(k)))
        for alpha in (0.0, thr / 2, thr - 0.05, thr + 0.05):
            res = search_entangling_unitary(n, alpha, bp, args.budget, args.seed)
            print(f"{n:>2} {k:>2} {alpha:>6.3f} {thr:>9.4f} {res.negativity:>11.3e}")


if __name__ == "__main__":
    main()
