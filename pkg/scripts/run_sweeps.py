#!/usr/bin/env python3
"""Run every verification sweep at the configured bounds and print a summary.

    python3 scripts/run_sweeps.py            # full bounds
    python3 scripts/run_sweeps.py --quick    # reduced bounds, a few seconds
    python3 scripts/run_sweeps.py --json reports.json
"""

import argparse
import json
import sys

from smoc import verify
from smoc.config import FULL, QUICK


def sweeps(cfg):
    yield "rho", lambda: verify.check_rho_identity(cfg.rho_max_n)
    yield "iota", lambda: verify.check_iota(cfg.iota_max_n)
    yield "bijection", lambda: verify.check_bijection(cfg.bijection_max_total, cfg.bijection_max_weight,
                                                      seed=cfg.seed)
    yield "counts", lambda: verify.check_counts(cfg.counts_max_n, cfg.counts_max_s, cfg.merge_max_total,
                                                cfg.merge_max_zero_inputs)
    yield "diamond", lambda: verify.check_diamond(cfg.diamond_max_total)
    yield "shadows", lambda: verify.check_shadows(cfg.shadow_max_total)
    yield "odd", lambda: verify.check_odd(cfg.odd_max_total, cfg.odd_max_weight)
    yield "ranks", lambda: verify.check_relation_ranks(cfg.rank_max_color)
    yield "normalizer", lambda: verify.check_normalizer(cfg.normalizer_max_total, cfg.normalizer_max_weight)
    yield "operations", lambda: verify.check_operations(cfg.operation_samples, seed=cfg.seed)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="use the reduced bounds")
    ap.add_argument("--only", nargs="*", help="subset of sweeps to run")
    ap.add_argument("--json", help="write all reports to this file")
    args = ap.parse_args(argv)

    cfg = QUICK if args.quick else FULL
    reports = []
    for name, run in sweeps(cfg):
        if args.only and name not in args.only:
            continue
        rep = run()
        reports.append(rep.to_dict())
        counts = ", ".join(f"{k}={v}" for k, v in rep.counts.items())
        print(f"{'PASS' if rep.passed else 'FAIL'}  {name:<11} {rep.elapsed_ms / 1000:7.1f}s  {counts}",
              flush=True)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": cfg.to_dict(), "reports": reports}, fh, indent=1)
    return 0 if all(r["pass"] for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
