"""Jensen-polynomial hyperbolicity scan beyond the default range.

    python3 scripts/turan_scan.py --d 3 4 --nmax 4000 --jobs 4

For each d prints the failure set summary: the largest non-hyperbolic shift,
its run structure, and whether the tail above it is hyperbolic.
"""

import argparse
import json
import time

from seqfree import bigseries as bs
from seqfree import inequalities as ineq


def runs(xs):
    """Compress a sorted integer list into [start, end, step] arithmetic runs."""
    out = []
    for x in xs:
        if out and out[-1][0] == out[-1][1] and x - out[-1][1] <= 2:
            out[-1][1], out[-1][2] = x, x - out[-1][0]
        elif out and x - out[-1][1] == out[-1][2]:
            out[-1][1] = x
        else:
            out.append([x, x, 1])
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--d", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--nmax", type=int, default=4000)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    table = bs.g2_table(args.nmax + max(args.d))
    for d in args.d:
        t0 = time.perf_counter()
        rep = ineq.minimal_hyperbolic_shift(d, args.nmax, table, args.jobs)
        w = rep.witness
        print(json.dumps({
            "d": d, "n_max": args.nmax, "verdict": rep.verdict,
            "largest_failure": w["largest_failure"], "empirical_N": w["empirical_N"],
            "failure_runs": runs(w["failures"]), "repeated_roots": w["repeated_roots"],
            "seconds": round(time.perf_counter() - t0, 1),
        }))


if __name__ == "__main__":
    main()
