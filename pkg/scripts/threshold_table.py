"""Locate each spectral criterion's flip point on a fine alpha grid and compare with 1 - 2^-k.

Prints a table: n, cut size k, closed-form threshold, and the first grid
point where Johnston (k=1), the degenerate closed form and the
Hildebrand ordering test report PPT/separable from spectrum.
"""

import argparse
import warnings

import numpy as np

from dqc1ent.spectrum import (
    OrderingSaturationWarning,
    degenerate_pair_from_spectrum,
    degenerate_ppt_condition,
    dqc1_alpha_threshold,
    hildebrand_ppt_from_spectrum,
    johnston_sfs,
)
from dqc1ent.states import dqc1_spectrum


def first_true(fn, grid):
    for a in grid:
        if fn(a):
            return f"{a:.4f}"
    return "-"


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--step", type=float, default=1e-3)
    args = p.parse_args()
    grid = np.round(np.arange(0, 1 + args.step / 2, args.step), 10)
    print(f"{'n':>2} {'k':>2} {'1-2^-k':>8} {'johnston':>9} {'degenerate':>10} {'hildebrand':>10}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OrderingSaturationWarning)
        for n in range(1, args.n_max + 1):
            for k in range(1, (n + 1) // 2 + 1):
                if 2 * k > n + 1:
                    continue
                john = first_true(lambda a: johnston_sfs(dqc1_spectrum(n, a)).holds, grid) if k == 1 else ""

                def degen(a):
                    return degenerate_ppt_condition(degenerate_pair_from_spectrum(dqc1_spectrum(n, a), k), k).holds

                deg = first_true(degen, grid) if 2 * k < n + 1 and _degenerate_applies(n, k) else ""
                hil = first_true(lambda a: hildebrand_ppt_from_spectrum(dqc1_spectrum(n, a), k, n + 1).holds, grid) if k <= 4 else ""
                print(f"{n:>2} {k:>2} {dqc1_alpha_threshold(k):>8.4f} {john:>9} {deg:>10} {hil:>10}")


def _degenerate_applies(n, k):
    try:
        degenerate_pair_from_spectrum(dqc1_spectrum(n, 0.3), k)
        return True
    except ValueError:
        return False


if __name__ == "__main__":
    main()
