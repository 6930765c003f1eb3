"""Acceptance criteria at full bounds; one PASS/FAIL line each in the summary.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import random
import time

import pytest

from conftest import ACCEPTANCE
from smoc import oracle, verify
from smoc.cli import main
from smoc.config import FULL
from smoc.syntax import parse, print_expr, random_expr

pytestmark = pytest.mark.acceptance


def judge(k, name, budget, body):
    """Run ``body`` -> (ok, note), record the verdict and assert it."""
    t0 = time.perf_counter()
    try:
        ok, note = body()
    except Exception as exc:
        ok, note = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - t0
    in_time = elapsed < budget
    note = f"{note}; {elapsed:.1f}s of {budget}s"
    ACCEPTANCE[k] = (name, ok and in_time, note)
    print(f"criterion {k:2d} {'PASS' if ok and in_time else 'FAIL'}  {name}  ({note})")
    assert ok, note
    assert in_time, note


def summary(rep):
    return rep.passed, ", ".join(f"{k}={v}" for k, v in rep.counts.items())


def test_criterion_01_rho_identity():
    judge(1, "rho identity", 10, lambda: summary(verify.check_rho_identity(FULL.rho_max_n)))


def test_criterion_02_iota_structure():
    judge(2, "iota structure", 5, lambda: summary(verify.check_iota(FULL.iota_max_n)))


def test_criterion_03_pure_tree_bijection():
    def body():
        return summary(verify.check_bijection(FULL.bijection_max_total, FULL.bijection_max_weight,
                                              seed=FULL.seed))
    judge(3, "pure-tree bijection", 60, body)


def test_criterion_04_class_counts():
    def body():
        examples = [oracle.closure((4,), 0, (2, 0)).class_count, oracle.closure((6,), 0, (3, 0)).class_count]
        rep = verify.check_counts(FULL.counts_max_n, FULL.counts_max_s, FULL.merge_max_total,
                                  FULL.merge_max_zero_inputs)
        ok, note = summary(rep)
        return ok and examples == [3, 15], f"{note}, examples={examples}"
    judge(4, "class-count formulas", 120, body)


def test_criterion_05_diamond():
    judge(5, "weight-3 diamond", 600, lambda: summary(verify.check_diamond(FULL.diamond_max_total)))


def test_criterion_06_shadow_invariance():
    judge(6, "shadow invariance", 120, lambda: summary(verify.check_shadows(FULL.shadow_max_total)))


def test_criterion_07_odd_mode():
    judge(7, "odd mode", 600, lambda: summary(verify.check_odd(FULL.odd_max_total, FULL.odd_max_weight)))


def test_criterion_08_relation_ranks():
    def body():
        rep = verify.check_relation_ranks(FULL.rank_max_color)
        ok, note = summary(rep)
        xixi = [oracle.relation_span_rank("xixi", (n,)) for n in (4, 5, 6)]
        return ok and xixi == [3, 15, 90], f"{note}, xixi={xixi}"
    judge(8, "relation ranks", 300, body)


def test_criterion_09_normalizer_and_operations():
    def body():
        norm = verify.check_normalizer(FULL.normalizer_max_total, FULL.normalizer_max_weight)
        ops = verify.check_operations(FULL.operation_samples, seed=FULL.seed)
        return norm.passed and ops.passed, f"normalizer {summary(norm)[1]}; operations {summary(ops)[1]}"
    judge(9, "normalizer and operations", 600, body)


def test_criterion_10_frontend():
    def body():
        rng = random.Random(FULL.seed)
        bad = 0
        sizes = []
        for _ in range(FULL.corpus_size):
            t = random_expr(rng, max_vertices=FULL.corpus_max_vertices, max_inputs=6, max_color=5)
            text = print_expr(t)
            back = parse(text)
            bad += back != t or print_expr(back) != text
            sizes.append(len(text))
        codes = (
            main(["eq", "xi[1,2](xi[1,2](x1:4))", "xi[1,2](xi[3,4](x1:4))"]),
            main(["eq", "xi[1,2](xi[1,2](x1:4))", "xi[1,2](xi[3,4](x1:4))", "--odd"]),
            main(["eq", "x1:2", "p[2 1](x1:2)"]),
            main(["normalize", "xi[3,2](x1:4)"]),
            main(["normalize", "m(x1:2,"]),
            main(["count", "--type", "(6;0)", "--bigrade", "(3,0)", "--limit", "2"]),
        )
        ok = bad == 0 and codes == (0, 1, 1, 2, 2, 2)
        return ok, f"corpus={FULL.corpus_size}, failures={bad}, longest={max(sizes)}, exit codes={codes}"
    judge(10, "frontend round trip and exit codes", 30, body)
