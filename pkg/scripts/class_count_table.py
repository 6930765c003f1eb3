#!/usr/bin/env python3
"""Tabulate closure class counts against the expected S∘M count.

For each type of the given weight and total color, prints the even and odd
class counts, the expected count and the consistency of the odd closure.
"""

import argparse

from smoc import oracle
from smoc.normalform import EVEN, ODD


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--weight", type=int, default=3)
    ap.add_argument("--max-total", type=int, default=6)
    ap.add_argument("--limit", type=int, default=None)
    args = ap.parse_args(argv)

    print(f"{'type':<18}{'bigrade':<9}{'even':>8}{'odd':>8}{'expected':>10}  odd consistent")
    for bigrade in oracle.weight_bigrades(args.weight):
        for inputs, output in oracle.types_for(bigrade, args.max_total):
            even = oracle.closure(inputs, output, bigrade, EVEN, limit=args.limit)
            odd = oracle.closure(inputs, output, bigrade, ODD, limit=args.limit)
            want = oracle.count_expected(inputs, output, bigrade)
            label = f"({','.join(map(str, inputs))};{output})"
            flag = "" if even.class_count == odd.class_count == want else "  MISMATCH"
            print(f"{label:<18}{str(bigrade):<9}{even.class_count:>8}{odd.class_count:>8}{want:>10}  "
                  f"{odd.consistent}{flag}")


if __name__ == "__main__":
    main()
