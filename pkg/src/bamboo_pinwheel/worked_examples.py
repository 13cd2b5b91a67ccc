"""Built-in reproductions of the 16-bamboo worked examples and the tight family.

:func:`reproduce` returns the report text and the list of failed checks;
the ``paper-tables`` CLI command prints the former and exits nonzero on
the latter.
"""

from __future__ import annotations

from fractions import Fraction

from .bounds import lower_bound
from .core import TrimPlan, format_rational
from .cycles import build_schedule, verify_schedule
from .generators import dyadic16_instance, garden16_instance, gen_lemma1
from .oracle import exact_optimum
from .pw_classic import build_plan_pw
from .pw_enhanced import plan_option_a, plan_option_b, run_pw2
from .simulator import simulate

# partition contents in 1-based bamboo labels
PW_PARTITIONS = [[1], [2], [3], [4], [5, 6], [7, 8], [9, 10], [11, 12, 13], [14, 15, 16]]
OPTION_A_PARTITIONS = [[1], [2], [3], [4], [5, 6], [12, 15, 16], [7, 8, 9], [10, 11, 13, 14]]
OPTION_B_PARTITIONS = [[1], [2], [3, 4], [5, 6], [12, 15, 16], [7, 8, 9], [10, 11, 13, 14]]

TIGHT_EPS = Fraction(1, 1000)


def partition_labels(plan: TrimPlan) -> list[list[int]]:
    return [[m + 1 for m in p.members] for p in plan.partitions]


def _plan_block(title, inst, plan) -> list[str]:
    sched = build_schedule(plan)
    rep = verify_schedule(plan, sched, inst)
    sim = simulate(inst, sched, 2 * sched.period)
    lines = [f"== {title}: option {plan.option}, alpha = {plan.alpha}, z = {format_rational(plan.z)}"]
    for i, p in enumerate(plan.partitions, 1):
        members = ",".join(f"b{m + 1}" for m in p.members)
        lines.append(f"  P{i}: [{members}]  load {format_rational(p.load)}")
    lines.append(f"  verify: {rep.summary()}")
    lines.append(f"  simulated elevation over {2 * sched.period} days: {format_rational(sim.elevation)}")
    lines.append("  first rounds:")
    lines += ["    " + row for row in sched.dump(4 * plan.alpha).splitlines()]
    return lines


def reproduce() -> tuple[str, list[str]]:
    failures: list[str] = []
    out: list[str] = []

    def check(cond, msg):
        if not cond:
            failures.append(msg)

    t1 = dyadic16_instance()
    pw1 = build_plan_pw(t1)
    out += _plan_block("16 dyadic growths, PW", t1, pw1)
    check(pw1.z == 9 and partition_labels(pw1) == PW_PARTITIONS, "dyadic garden PW partitions/z")

    t2 = garden16_instance()
    out.append(f"16-bamboo garden: sum h = {format_rational(t2.total)}, LB = {format_rational(lower_bound(t2))}")
    pw2_classic = build_plan_pw(t2)
    out += _plan_block("16-bamboo garden, PW", t2, pw2_classic)
    check(pw2_classic.z == 9 and partition_labels(pw2_classic) == PW_PARTITIONS, "garden PW partitions/z")
    a, b = plan_option_a(t2), plan_option_b(t2)
    out += _plan_block("16-bamboo garden, enhanced", t2, a)
    out += _plan_block("16-bamboo garden, enhanced", t2, b)
    check(a.z == 8 and partition_labels(a) == OPTION_A_PARTITIONS, "garden option (a) partitions/z")
    check(b.z == Fraction(42, 5) and partition_labels(b) == OPTION_B_PARTITIONS, "garden option (b) partitions/z")
    best, z = run_pw2(t2)
    out.append(f"enhanced value: min(z(a), z(b)) = {format_rational(z)} (option {best.option})")
    check(z == 8 and best.option == "A", "enhanced value on the garden")

    out.append("== tight family, eps = 1/1000")
    out.append("   n  z_PW  z_PW2   LB        H*")
    for n in range(2, 21, 2):
        inst = gen_lemma1(n, TIGHT_EPS)
        zpw = build_plan_pw(inst).z
        _, z2 = run_pw2(inst)
        h_star = ""
        if n <= 4:
            h_star = exact_optimum(inst, max_bamboos=n + 1).value
            expected = Fraction(n, 2) + 1 + (n + 2) * TIGHT_EPS
            check(h_star == expected, f"tight family n={n}: H* = {h_star}, expected {expected}")
            h_star = format_rational(h_star)
        check(zpw == n + 1, f"tight family n={n}: z_PW = {zpw}")
        out.append(
            f"  {n:2d}  {format_rational(zpw):>4}  {format_rational(z2):>7}  "
            f"{format_rational(lower_bound(inst)):>8}  {h_star}"
        )
    out.append("all checks passed" if not failures else "FAILED: " + "; ".join(failures))
    return "\n".join(out) + "\n", failures
