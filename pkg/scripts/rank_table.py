#!/usr/bin/env python3
"""Exact ranks of the three quadratic relation families next to their closed forms."""

import argparse

from smoc import oracle
from smoc.verify import rank_params


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=6, help="color bound, as in `smoc verify ranks --max`")
    args = ap.parse_args(argv)

    bad = 0
    print(f"{'family':<10}{'params':<12}{'rank':>8}{'formula':>9}")
    for family, params in rank_params(args.max):
        got = oracle.relation_span_rank(family, params)
        want = oracle.expected_rank(family, params)
        bad += got != want
        print(f"{family:<10}{str(params):<12}{got:>8}{want:>9}{'' if got == want else '  MISMATCH'}")
    print(f"{bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
