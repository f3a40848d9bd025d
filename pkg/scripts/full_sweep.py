"""Scaled asymptotic error over the full finite range, with optional CSV dump.

    python3 scripts/full_sweep.py --nmax 31745 --csv sweep.csv
"""

import argparse
import csv
import json
import time

from seqfree import asymptotics as asy
from seqfree import bigseries as bs
from seqfree.numerics import mp


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--nmax", type=int, default=31745)
    ap.add_argument("--prec", type=int, default=192)
    ap.add_argument("--cache", default=None)
    ap.add_argument("--csv", default=None, help="write n,p2,asympt,scaled_error rows here")
    ap.add_argument("--envelope", type=int, default=0, help="also check P > E up to this n")
    args = ap.parse_args()

    t0 = time.perf_counter()
    table = bs.load_or_build(args.nmax, args.cache)
    print(f"table built in {time.perf_counter() - t0:.1f}s")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "p2", "asympt", "scaled_error"])
            for n, p2n, a, e in asy.sweep_rows(table, 1, args.nmax, args.prec):
                w.writerow([n, p2n, mp.nstr(a, 25), mp.nstr(e, 12)])
    rep = asy.verify_error_sup(table, 1, args.nmax, args.prec)
    print(json.dumps(rep.as_dict(), indent=2))
    if args.envelope:
        print(json.dumps(asy.verify_envelope(args.envelope).as_dict(), indent=2))
    print(f"total {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
