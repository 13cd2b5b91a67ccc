from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bamboo_pinwheel.core import BGTInstance
from bamboo_pinwheel.cycles import build_schedule, verify_schedule
from bamboo_pinwheel.generators import gen_lemma1, gen_random
from bamboo_pinwheel.pw_enhanced import (
    classify,
    classify_instance,
    pack_remainders,
    pack_structured,
    plan_option_a,
    plan_option_b,
    run_pw2,
)
from bamboo_pinwheel.simulator import simulate
from bamboo_pinwheel.worked_examples import partition_labels


def matching_classes(h):
    """Independent restatement of the four class predicates."""
    hits = []
    if h > F(2, 3):
        hits.append(("S1", None, F(1)))
    if F(1, 2) < h <= F(2, 3):
        hits.append(("S2", None, F(1)))
    for k in range(1, 64):
        top = F(1, 2**k)
        if F(2, 3) * top < h <= top:
            hits.append(("S3", k, top))
        if top / 2 < h <= F(2, 3) * top:
            hits.append(("S4", k, F(2, 3) * top))
    return hits


@pytest.mark.parametrize("h, subset, k, a, b", [
    ("0.83", "S1", None, F(1), F(1)),
    ("0.6", "S2", None, F(1), F(1, 2)),
    ("0.45", "S3", 1, F(1, 2), F(1, 2)),
    ("0.32", "S4", 1, F(1, 3), F(1, 3)),
    ("1/2", "S3", 1, F(1, 2), F(1, 2)),
    ("2/3", "S2", None, F(1), F(1, 2)),
    ("1/3", "S4", 1, F(1, 3), F(1, 3)),
    ("1", "S1", None, F(1), F(1)),
])
def test_classify_examples(h, subset, k, a, b):
    c = classify(F(h))
    assert (c.subset, c.k, c.h_dd_a, c.h_dd_b) == (subset, k, a, b)


def test_classify_rejects():
    for bad in (F(0), F(-1, 2), F(5, 4)):
        with pytest.raises(ValueError):
            classify(bad)


def _check_total(h):
    c = classify(h)
    hits = matching_classes(h)
    assert len(hits) == 1
    assert (c.subset, c.k, c.h_dd_a) == hits[0]
    assert c.h_dd_a >= h and c.h_dd_b >= h or c.subset == "S2"
    assert c.h_dd_a.numerator == 1


@settings(max_examples=500, deadline=None)
@given(st.fractions(min_value=0, max_value=1, max_denominator=10**9).filter(lambda q: q > 0))
def test_classify_totality_hypothesis(h):
    _check_total(h)


def test_classify_totality_million():
    rng = np.random.default_rng(2024)
    den = rng.integers(1, 10**9, size=10**6)
    num = (rng.random(10**6) * den).astype(np.int64) + 1
    for p, q in zip(num.tolist(), den.tolist()):
        h = F(min(p, q), q)
        c = classify(h)
        lo = {"S1": F(2, 3), "S2": F(1, 2)}.get(c.subset)
        if lo is None:
            top = F(1, 2**c.k)
            lo = F(2, 3) * top if c.subset == "S3" else top / 2
        assert lo < h <= c.h_dd_a


def _items(values):
    return [classify(F(v), i) for i, v in enumerate(values)]


def _vals(bins, items, option="A"):
    return [sorted((items[m].h_dd(option) for m in b), reverse=True) for b in bins]


def test_pack_structured_s3():
    items = _items(["1/2", "1/2", "1/2", "1/4", "1/4", "1/8"])
    res = pack_structured(items)
    assert res.pi == 2
    assert _vals(res.full_bins, items) == [[F(1, 2)] * 2, [F(1, 2), F(1, 4), F(1, 4)]]
    assert [items[m].h_dd_a for m in res.remainder] == [F(1, 8)]


def test_pack_structured_s4():
    items = _items(["1/3"] * 5 + ["1/6"] * 3 + ["1/12"])
    res = pack_structured(items)
    assert _vals(res.full_bins, items) == [[F(1, 3)] * 3, [F(1, 3), F(1, 3), F(1, 6), F(1, 6)]]
    assert sorted(items[m].h_dd_a for m in res.remainder) == [F(1, 12), F(1, 6)]


def test_pack_structured_single_and_mixed_subsets():
    items = _items(["1/4"])
    assert pack_structured(items).pi == 0 and pack_structured(items).remainder == (0,)
    with pytest.raises(ValueError):
        pack_structured(_items(["1/4", "1/3"]))


def test_pack_structured_bins_exact_on_random():
    rng = np.random.default_rng(5)
    for _ in range(200):
        for subset in ("S3", "S4"):
            vals = [F(int(rng.integers(1, 2000)), 4000) for _ in range(int(rng.integers(1, 30)))]
            items = [c for c in (classify(v, i) for i, v in enumerate(vals)) if c.subset == subset]
            items = [classify(c.h_dd_a, i) for i, c in enumerate(items)]
            if not items:
                continue
            res = pack_structured(items)
            for b in res.full_bins:
                assert sum(items[m].h_dd_a for m in b) == 1
            assert sum(items[m].h_dd_a for m in res.remainder) < 1


def test_remainders_worked_example():
    items = _items(["1/4", "1/8", "1/16"])
    res = pack_remainders([[], items, []])
    assert res.count == 1 and res.formula_bins == 1


def test_remainders_empty():
    res = pack_remainders([[], [], []])
    assert res.count == 0 and res.strategy == "empty"


def _min_bins_brute(values):
    """Fewest unit bins for values, trying every assignment."""
    n = len(values)
    for k in range(1, n + 1):
        for assign in product(range(k), repeat=n):
            loads = [F(0)] * k
            for v, b in zip(values, assign):
                loads[b] += v
            if all(x <= 1 for x in loads):
                return k
    return n


def test_remainders_mixed_pool_matches_brute_force():
    s2 = [classify(F(55, 100), 0)]  # h'' = 1/2 under option B
    s3 = [classify(F(1, 2), 1), classify(F(1, 4), 2)]
    s4 = [classify(F(1, 3), 3)]
    res = pack_remainders([s2, s3, s4], "B")
    values = [F(1, 2), F(1, 2), F(1, 4), F(1, 3)]
    assert _min_bins_brute(values) == 2
    assert res.count == 2
    loads = sorted(sum((c.h_dd("B") for c in s2 + s3 + s4 if c.bamboo in b), F(0)) for b in res.bins)
    assert loads == [F(7, 12), F(1)]


def test_remainders_never_exceed_group_count():
    rng = np.random.default_rng(9)
    for _ in range(300):
        vals = [F(int(k), 1000) for k in rng.integers(1, 667, size=rng.integers(2, 25))]
        inst = BGTInstance.from_growths(["1"] + vals)
        for plan in (plan_option_a(inst), plan_option_b(inst)):
            if plan is None:
                continue
            assert plan.remainder_bins <= max(plan.remainder_bins_formula, 3)


def test_option_a_worked_example(garden16, golden):
    plan = plan_option_a(garden16)
    g = golden("worked_partitions.json")
    assert plan.alpha == 8 and plan.z == 8
    assert partition_labels(plan) == g["garden16_option_a"]
    assert [str(p.load) for p in plan.partitions] == g["garden16_option_a_loads"]


def test_option_b_worked_example(garden16, golden):
    plan = plan_option_b(garden16)
    g = golden("worked_partitions.json")
    assert plan.alpha == 7 and plan.z == F(42, 5)
    assert plan.j_star == 2
    assert partition_labels(plan) == g["garden16_option_b"]
    assert [str(p.load) for p in plan.partitions] == g["garden16_option_b_loads"]


def test_run_pw2_garden16(garden16):
    plan, z = run_pw2(garden16)
    assert z == 8 and plan.option == "A"


def test_option_a_single():
    plan = plan_option_a(BGTInstance.from_growths(["1"]))
    assert plan.alpha == 1 and plan.z == 1


def test_option_a_tight_n2():
    inst = gen_lemma1(2, F(1, 100))
    subsets = [c.subset for c in classify_instance(inst)]
    # 1 > 2/3 and 1/2 < 51/100 <= 2/3
    assert subsets == ["S1", "S2", "S2"]
    plan = plan_option_a(inst)
    assert plan.z == 3 and [p.kind for p in plan.partitions] == ["S1", "S2", "S2"]


def test_option_b_absent_without_s2():
    inst = BGTInstance.from_growths(["1", "1/2", "1/3", "1/5"])
    assert plan_option_b(inst) is None
    plan, z = run_pw2(inst)
    assert plan.option == "A" and z == plan_option_a(inst).z


def test_option_b_odd_s2_leftover():
    inst = BGTInstance.from_growths(["1", "0.6", "0.55", "0.51"])
    plan = plan_option_b(inst)
    kinds = {p.kind: p for p in plan.partitions}
    assert [p.members for p in plan.partitions if p.kind == "S2"] == [(1, 2)]
    rem = [p for p in plan.partitions if p.kind == "R"]
    assert [p.members for p in rem] == [(3,)] and rem[0].load == F(1, 2)
    assert plan.remainder_bins_formula == 1
    assert plan.z == 2 * F(6, 10) * plan.alpha
    assert "S1" in kinds


def test_tight_n8_option_b_wins():
    inst = gen_lemma1(8, F(1, 1000))
    a, b = plan_option_a(inst), plan_option_b(inst)
    assert a.z == 9
    assert b.z == F(501, 100) == 2 * F(501, 1000) * 5
    plan, z = run_pw2(inst)
    assert plan.option == "B" and z == F(501, 100)
    sched = build_schedule(plan)
    assert simulate(inst, sched, 2 * sched.period).elevation <= z


def test_tie_goes_to_option_a():
    # alpha(a) = 4, alpha(b) = 3 and z(b) = 2 * 2/3 * 3 = 4
    inst = BGTInstance.from_growths(["1", "2/3", "2/3", "1/2", "1/2"])
    a, b = plan_option_a(inst), plan_option_b(inst)
    assert a.z == b.z == 4
    assert run_pw2(inst)[0].option == "A"


@pytest.mark.parametrize("profile", ["uniform", "dyadic", "s2-heavy", "boundary"])
def test_safety_random(profile):
    for seed in range(12):
        inst = gen_random(18, [77, seed], profile)
        for plan in (plan_option_a(inst), plan_option_b(inst)):
            if plan is None:
                continue
            sched = build_schedule(plan)
            assert verify_schedule(plan, sched, inst).passed
            assert simulate(inst, sched, 2 * sched.period).elevation <= plan.z
