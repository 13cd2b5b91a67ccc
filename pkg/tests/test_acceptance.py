"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Suites: 1 is the two 16-bamboo worked examples, 2 the tight family, 3 a
seeded corpus over every generator profile (its small-growth part is suite
4). Every instance of suites 1-4 goes through ``evaluate_instance``, which
builds, verifies and simulates (two full periods) the PW schedule and both
PW'' options, runs ReduceMax at its default horizon and the oracle where the
instance is small enough.
"""

import os
import time
from fractions import Fraction as F

import numpy as np
import pytest

from bamboo_pinwheel.bounds import lower_bound
from bamboo_pinwheel.core import BGTInstance
from bamboo_pinwheel.cycles import build_schedule
from bamboo_pinwheel.experiment import (
    ALGORITHMS,
    ASYMPTOTIC_BOUND,
    GUARANTEE_BOUND,
    REDUCE_MAX_TOLERANCE,
    evaluate_instance,
    run_instances,
)
from bamboo_pinwheel.generators import corpus, dyadic16_instance, garden16_instance, gen_lemma1
from bamboo_pinwheel.oracle import exact_optimum
from bamboo_pinwheel.pw_classic import build_plan_pw
from bamboo_pinwheel.pw_enhanced import plan_option_a, plan_option_b, run_pw2
from bamboo_pinwheel.simulator import simulate
from bamboo_pinwheel.worked_examples import partition_labels

EPS = F(1, 1000)
CORPUS_PLAN = [
    ("uniform", 400, (2, 40), 101),
    ("dyadic", 400, (2, 40), 102),
    ("s2-heavy", 400, (2, 40), 103),
    ("boundary", 400, (2, 40), 104),
    ("small-growth", 500, (50, 50), 105),
]
ASYMPTOTIC_SLACK = F(1, 20)


def named_corpus():
    out = []
    for profile, count, n_range, seed in CORPUS_PLAN:
        out += [(f"{profile}-{i}", inst) for i, inst in enumerate(corpus(profile, count, n_range, seed))]
    return out


@pytest.fixture(scope="module")
def suite3():
    named = named_corpus()
    results = run_instances(named, ALGORITHMS, workers=os.cpu_count() or 1)
    return named, results


@pytest.fixture(scope="module")
def suites12():
    named = [("dyadic16", dyadic16_instance()), ("garden16", garden16_instance())]
    named += [(f"tight-n{n}", gen_lemma1(n, EPS)) for n in range(2, 21, 2)]
    return named, run_instances(named, ["pw", "pw2", "reducemax"])


def test_criterion_1_worked_examples(criterion, golden):
    start = time.perf_counter()
    g = golden("worked_partitions.json")
    t1, t2 = dyadic16_instance(), garden16_instance()
    pw1, pw2c = build_plan_pw(t1), build_plan_pw(t2)
    a, b = plan_option_a(t2), plan_option_b(t2)
    best, z = run_pw2(t2)
    schedules_match = (
        build_schedule(pw1).dump(36) == golden("dyadic16_pw_schedule.txt")
        and build_schedule(a).dump(96) == golden("garden16_option_a_schedule.txt")
        and build_schedule(b).dump(84) == golden("garden16_option_b_schedule.txt")
    )
    elapsed = time.perf_counter() - start
    ok = (
        pw2c.alpha == 9 and pw2c.z == 9 and pw1.z == 9
        and partition_labels(pw1) == g["dyadic16_pw"] and partition_labels(pw2c) == g["garden16_pw"]
        and a.z == 8 and b.z == F(42, 5) and z == 8 and best.option == "A"
        and partition_labels(a) == g["garden16_option_a"]
        and partition_labels(b) == g["garden16_option_b"]
        and schedules_match and elapsed < 1
    )
    criterion(1, ok, f"PW z={pw2c.z} (9 partitions), z(a)={a.z}, z(b)={b.z}, PW''={z}; "
                     f"partitions and day tables match goldens: {schedules_match}; {elapsed:.3f}s")


def test_criterion_2_tight_family(criterion):
    rows, ok, slowest = [], True, 0.0
    for n in range(2, 21, 2):
        start = time.perf_counter()
        inst = gen_lemma1(n, EPS)
        z_pw = build_plan_pw(inst).z
        ok &= z_pw == n + 1
        plan, z2 = run_pw2(inst)
        sched = build_schedule(plan)
        upper = simulate(inst, sched, 2 * sched.period).elevation  # H* <= this
        if n <= 4:
            h_star = exact_optimum(inst, max_bamboos=n + 1).value
            ok &= h_star == F(n, 2) + 1 + (n + 2) * EPS
            lo = hi = z_pw / h_star
        else:
            lo, hi = z_pw / upper, z_pw / lower_bound(inst)
        rows.append((n, lo, hi))
        slowest = max(slowest, time.perf_counter() - start)
    lows = [lo for _, lo, _ in rows]
    ratio20 = rows[-1][1]
    ok &= ratio20 >= F(8, 5) and lows == sorted(lows) and slowest < 1
    criterion(2, ok, f"z_PW = n+1 for n=2..20; H* formula exact at n=2,4; "
                     f"z_PW/H* at n=20 in [{float(rows[-1][1]):.4f}, {float(rows[-1][2]):.4f}] "
                     f"(lower ends rise {float(lows[0]):.3f} -> {float(lows[-1]):.3f}); "
                     f"slowest n {slowest:.3f}s")


def test_criterion_3_corollary_bound(criterion, suite3):
    named, res = suite3
    worst = max(F(r["z_pw2"]) / F(r["lb"]) for r in res.rows)
    bad = [r["instance"] for r in res.rows if F(r["z_pw2"]) / F(r["lb"]) > GUARANTEE_BOUND]
    profiles = {name.rsplit("-", 1)[0] for name, _ in named}
    ok = len(named) >= 2000 and not bad and len(profiles) == len(CORPUS_PLAN)
    criterion(3, ok, f"{len(named)} instances over {len(profiles)} profiles; "
                     f"max min(z_a,z_b)/LB = {worst} ~ {float(worst):.6f} vs {GUARANTEE_BOUND} "
                     f"~ {float(GUARANTEE_BOUND):.6f}; counterexamples: {bad[:5]}")


def test_criterion_4_asymptotic_bound(criterion, suite3):
    named, res = suite3
    pairs = [(inst, r) for (name, inst), r in zip(named, res.rows) if name.startswith("small-growth")]
    heavy = [(inst, r) for inst, r in pairs if inst.total >= 50 * inst.h1]
    worst = max(F(r["z_pw2"]) / F(r["lb"]) for _, r in heavy)
    limit = ASYMPTOTIC_BOUND + ASYMPTOTIC_SLACK
    ok = len(heavy) >= 500 and len(heavy) == len(pairs) and worst <= limit
    criterion(4, ok, f"{len(heavy)} instances with sum h >= 50 h(1); max min z/LB = {float(worst):.6f} "
                     f"vs 12/7 + 1/20 = {float(limit):.6f}")


def test_criterion_5_schedule_safety(criterion, suite3, suites12):
    named3, res3 = suite3
    named12, res12 = suites12
    rows = res12.rows + res3.rows
    failures = res12.failures + res3.failures
    unsafe = [r["instance"] for r in rows
              if r["verify_pw"] != "pass" or r["verify_pw2"] != "pass"
              or F(r["elev_pw"]) > F(r["z_pw"]) or F(r["elev_pw2"]) > F(r["z_pw2"])]
    schedules = sum(2 + (r["z_b"] != "inf") for r in rows)
    safety_fail = [f for f in failures if "verification" in f or "exceeds z" in f]
    ok = not unsafe and not safety_fail
    criterion(5, ok, f"{schedules} PW/PW'' schedules on {len(rows)} instances verified and simulated "
                     f"over 2 periods; violations: {(unsafe + safety_fail)[:5]}")


def test_criterion_6_pw_upper_bound(criterion, suite3, suites12):
    named = suites12[0] + suite3[0]
    rows = suites12[1].rows + suite3[1].rows
    bad = [r["instance"] for (_, inst), r in zip(named, rows) if F(r["z_pw"]) > 2 * inst.total]
    worst = max(F(r["z_pw"]) / (2 * inst.total) for (_, inst), r in zip(named, rows))
    criterion(6, not bad, f"z_PW <= 2 sum h on {len(rows)} instances; max z_PW/(2 sum h) = "
                          f"{float(worst):.6f}; violations: {bad[:5]}")


def test_criterion_7_oracle_sandwich(criterion):
    start = time.perf_counter()
    rng = np.random.default_rng(77)
    checked, bad = 0, []
    while checked < 150:
        n = int(rng.integers(1, 4))
        gs = []
        for _ in range(n):
            q = int(rng.integers(1, 9))
            gs.append(F(int(rng.integers(1, q + 1)), q))
        inst = BGTInstance.from_growths(gs)
        out = evaluate_instance(inst, f"tiny-{checked}", ["pw2", "oracle"], oracle_max_bamboos=3)
        v = out.values
        res = exact_optimum(inst, max_bamboos=3)
        cyc = res.witness
        witness = simulate(inst, lambda t: cyc[t % len(cyc)], 2 * len(cyc)).elevation
        if not (v["lb"] <= res.value <= v["elev_pw2"] <= v["z_pw2"] and witness <= res.value) or out.failures:
            bad.append([str(g) for g in inst.growths])
        checked += 1
    elapsed = time.perf_counter() - start
    criterion(7, not bad and elapsed < 60,
              f"{checked} instances (n <= 3, denominators <= 8): LB <= H* <= elev(PW'') <= min z and "
              f"witness elevation <= H*; {elapsed:.1f}s; violations: {bad[:3]}")


def test_criterion_8_reduce_max(criterion, suite3):
    named, res = suite3
    ratios = [F(r["ratio_reducemax_lb"]) for r in res.rows]
    over = [(name, r) for (name, _), r in zip(named, ratios) if r > REDUCE_MAX_TOLERANCE]
    warned = {w.split()[1].rstrip(":") for w in res.warnings if w.startswith("WARN")}
    silent = [name for name, _ in over if name not in warned]
    # report-only: the law holding is reported, a violation is reported as WARN
    status = "all within tolerance" if not over else f"{len(over)} WARN"
    criterion(8, not silent,
              f"ReduceMax elevation/LB over {len(ratios)} instances: max {float(max(ratios)):.6f} "
              f"vs {float(REDUCE_MAX_TOLERANCE)}; {status}; unreported violations: {silent[:3]}")
