"""Direct summation of the large-k and small-k parts against their stated bounds."""

import argparse
import json
import time

from seqfree import exact_formula as ef


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[25, 100])
    ap.add_argument("--factor", type=int, default=10, help="sum k up to factor * 2 pi sqrt(n)")
    args = ap.parse_args()
    for n in args.n:
        t0 = time.perf_counter()
        rep = ef.verify_tail_bounds(n, args.factor)
        out = rep.as_dict()
        out["seconds"] = round(time.perf_counter() - t0, 1)
        print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
