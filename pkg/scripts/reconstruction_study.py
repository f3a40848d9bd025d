"""Residual of the truncated exact formula across n and k_max.

Prints one row per (n, k_max): rounded value, target, residual, error budget
and the per-family partial sums.
"""

import argparse
import time

from seqfree import bigseries as bs
from seqfree import exact_formula as ef
from seqfree.numerics import mp


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[10, 100, 500, 1000, 2000, 3000])
    ap.add_argument("--kmax", type=int, nargs="+", default=[5, 10, 20, 40])
    ap.add_argument("--prec", type=int, default=192)
    args = ap.parse_args()

    table = bs.g2_table(max(args.n))
    print("n,k_max,rounded,target,ok,residual,error_budget,calK,K8,K4,K6,seconds")
    for n in args.n:
        for k in args.kmax:
            t0 = time.perf_counter()
            r = ef.p2_exact_formula(n, k, args.prec, target=table[n])
            fs = [mp.nstr(r.family_sums[f], 12) for f in ("calK", "K8", "K4", "K6")]
            print(f"{n},{k},{r.rounded},{table[n]},{r.reconstructed},{mp.nstr(r.residual, 6)},"
                  f"{mp.nstr(r.error_budget, 3)},{','.join(fs)},{time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main()
