"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (collected again in the
terminal summary). Run just this file with::

    pytest tests/test_acceptance.py -v -s
"""
import time
from collections import Counter

import numpy as np

from jumpfree.harness import runner
from jumpfree.harness.config import parse_config
from jumpfree.harness.fixtures import committee_config
from jumpfree.harness.generators import random_structured_instance
from jumpfree.harness.suites import run_suite
from jumpfree.lattice import enumerate_order_types, surjection_count
from jumpfree.subsetsum import solve_oracle, solve_structured

from test_lattice import brute_class_count
from test_subsetsum import numpy_zero_subset

SEED = 12345
RESULTS = []


def report(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:>2}: {detail}"
    RESULTS.append(line)
    print(line, flush=True)
    assert ok, line


def test_c01_order_type_counts():
    t0 = time.perf_counter()
    sizes = [len(enumerate_order_types(k)) for k in range(1, 5)]
    elapsed = time.perf_counter() - t0
    sums = [sum(surjection_count(k, j) for j in range(1, k + 1)) for k in range(1, 5)]
    brute = [brute_class_count(k) for k in range(1, 5)]
    ok = sizes == [1, 3, 13, 75] == sums == brute and elapsed < 1.0
    report(1, ok, f"sizes {sizes}, surjection sums {sums}, brute force {brute}, {elapsed:.3f}s")


def test_c02_committee_golden():
    rec = runner.run_label(parse_config(committee_config()))
    vals = {tuple(x): v for x, v in rec.outputs["labelings"]["s_hat"]["values"]}
    boss = vals[(7, 11)]
    diag = {z: vals[z] for z in [(7, 7), (11, 11)]}
    ok = boss == 3 and all(v == 11 for v in diag.values())
    report(2, ok, f"s_hat(7,11) = {boss} (want 3); isolated {diag} (want 11 for both)")


def test_c03_s_structure():
    t0 = time.perf_counter()
    res = run_suite("s_structure", 1000, SEED)
    elapsed = time.perf_counter() - t0
    ok = res.status == "pass" and elapsed < 60
    report(3, ok, f"1000 graphs, {res.checked} vertices, {res.violation_count} violations, "
                  f"{elapsed:.1f}s")


def test_c04_rho_equivalence():
    res = run_suite("rho_equivalence", 1000, SEED)
    report(4, res.status == "pass",
           f"1000 graphs x 3 rho, {res.checked} vertex checks, {res.violation_count} violations")


def test_c05_regularity_agreement():
    res = run_suite("regularity_agreement", 200, SEED, {"p": 2})
    ok = res.status == "pass" and res.checked > 0
    report(5, ok, f"200 instances, {res.checked} candidate cubes ({res.finds} regular), "
                  f"{res.violation_count} disagreements")


def test_c06_jump_free():
    t = run_suite("jumpfree_t", 1000, SEED)
    s = run_suite("jumpfree_s", 1000, SEED)
    thin = run_suite("jumpfree_s", 1000, SEED + 1, {"thin": 0.3})
    ok = all(r.status == "pass" for r in (t, s, thin))
    report(6, ok, f"t_hat {t.violation_count} / s_hat {s.violation_count} / thinned s_hat "
                  f"{thin.violation_count} violations; non-vacuous trials {t.checked}, "
                  f"{s.checked}, {thin.checked}")


def test_c07_kk_bound():
    res = run_suite("kk_bound", 200, SEED)
    agree = run_suite("regularity_agreement", 200, SEED + 7)
    cap = run_suite("capped_transfer", 200, SEED + 7)
    ok = all(r.status == "pass" for r in (res, agree, cap)) and res.finds > 0
    report(7, ok, f"{res.finds + agree.finds + cap.finds} regular cubes across suites, "
                  f"{res.violation_count + agree.violation_count + cap.violation_count} violations")


def test_c08_capped_transfer():
    res = run_suite("capped_transfer", 200, SEED)
    ok = res.status == "pass" and res.finds >= 100
    report(8, ok, f"{res.finds} regular finds in 200 attempts, {res.violation_count} violations")


def test_c09_solver_equivalence():
    bad = []
    sizes = Counter()
    brute = 0
    for i in range(500):
        H, k, t, p = random_structured_instance(SEED + i)
        vals = H.elements()
        assert len(vals) <= 24 and all(-100 <= v <= 100 for v in vals)
        rs = solve_structured(H, k, t, p)
        ro = solve_oracle(H)
        sizes[rs.solvable] += 1
        for r in (rs, ro):
            if r.solvable:
                left = Counter(vals)
                left.subtract(Counter(r.certificate))
                if min(left.values()) < 0 or sum(r.certificate) != 0:
                    bad.append((i, "certificate", r.certificate))
        if rs.solvable != ro.solvable:
            bad.append((i, "decision"))
        if len(vals) <= 20:
            brute += 1
            if numpy_zero_subset(np.array(vals)) != rs.solvable:
                bad.append((i, "brute force"))
    report(9, not bad, f"500 instances ({sizes[True]} solvable), {brute} also brute forced, "
                       f"{len(bad)} disagreements")


def test_c10_scaling():
    cfg = parse_config({"version": 1, "seed": SEED, "k": 2,
                        "domain": {"kind": "explicit", "points": [[0, 0]]},
                        "bench": {"ps": [4, 8, 16, 32], "k": 2, "t": 1}})
    t0 = time.perf_counter()
    rec = runner.run_bench(cfg)
    elapsed = time.perf_counter() - t0
    rows = rec.outputs["rows"]
    within = all(r["comparisons"] <= 16 * r["p"] ** 2 for r in rows)
    slope = runner.loglog_slope([r["p"] for r in rows], [r["comparisons"] for r in rows])
    ok = within and 1.5 <= slope <= 2.5 and elapsed < 300 and all(r["regular"] for r in rows)
    counts = [(r["p"], r["comparisons"]) for r in rows]
    report(10, ok, f"(p, comparisons) {counts}, slope {slope:.3f}, {elapsed:.1f}s")


def test_c11_reproducibility():
    base = {"version": 1, "seed": 7, "k": 2, "p": 2, "t": 1,
            "domain": {"kind": "cube", "E": [4, 9], "extra": 12},
            "edgeRule": {"name": "seeded-random", "params": {"density": 0.4}, "seed": 3},
            "selectionRule": {"name": "seeded-choice", "params": {"r": 2, "q": 0.7}, "seed": 4},
            "rhoRule": {"name": "min"},
            "verify": {"trials": 20},
            "bench": {"ps": [4, 8]}}
    runs = [
        (runner.run_label, committee_config()),
        (runner.run_label, base),
        (runner.run_search, base),
        (runner.run_verify, base),
        (runner.run_bench, base),
    ]
    diffs = []
    for stage, doc in runs:
        a = stage(parse_config(doc)).content()
        b = stage(parse_config(doc)).content()
        if a != b:
            diffs.append(stage.__name__)
    report(11, not diffs, f"{len(runs)} configs run twice, mismatches: {diffs or 'none'}")
