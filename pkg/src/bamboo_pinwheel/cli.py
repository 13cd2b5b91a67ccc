"""Command line entry point (``bgt``).

Exit status is 1 when a hard check fails (schedule verification, simulated
elevation above the plan value, a bound violated), 2 on bad input, else 0.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bounds import lower_bound
from .core import InstanceError, format_rational, parse_instance
from .experiment import (
    COLUMNS,
    ExperimentSpec,
    check_plan,
    evaluate_instance,
    run_experiment,
)
from .oracle import OracleLimitError, exact_optimum
from .pw_classic import build_plan_pw
from .pw_enhanced import run_pw2
from .simulator import reduce_max, simulate
from .worked_examples import reproduce


def _solve(args) -> int:
    try:
        inst = parse_instance(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, InstanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.csv:
        # one report row, same columns as the experiment driver
        out = evaluate_instance(inst, Path(args.file).stem, [args.algo], args.horizon)
        print(",".join(COLUMNS))
        print(",".join(str(out.row[c]) for c in COLUMNS))
        for w in out.warnings:
            print(w, file=sys.stderr)
        for f in out.failures:
            print(f"FAIL {f}", file=sys.stderr)
        return 1 if out.failures else 0

    failures: list[str] = []
    doc = {
        "instance": [format_rational(g) for g in inst.growths],
        "lb": format_rational(lower_bound(inst)),
        "algo": args.algo,
    }
    if args.algo in ("pw", "pw2"):
        plan = build_plan_pw(inst) if args.algo == "pw" else run_pw2(inst)[0]
        sched, rep, sim = check_plan(inst, plan, args.algo, failures)
        if args.horizon:
            sim = simulate(inst, sched, args.horizon)
            if sim.elevation > plan.z:
                failures.append(f"simulated elevation {sim.elevation} exceeds z = {plan.z}")
        doc.update(
            plan=plan.to_dict(inst),
            z=format_rational(plan.z),
            period=sched.period,
            verification=rep.summary(),
            simulation=sim.to_dict(),
            schedule_preview=sched.dump(min(sched.period, 4 * plan.alpha)).splitlines(),
        )
    elif args.algo == "reducemax":
        sim = reduce_max(inst, args.horizon)
        doc.update(elevation=format_rational(sim.elevation), simulation=sim.to_dict())
    else:
        try:
            res = exact_optimum(inst)
        except OracleLimitError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        cyc = res.witness
        wsim = simulate(inst, lambda t: cyc[t % len(cyc)], 2 * len(cyc))
        if wsim.elevation > res.value:
            failures.append(f"witness reaches {wsim.elevation} > H* = {res.value}")
        doc.update(
            h_star=format_rational(res.value),
            witness=list(cyc),
            states_explored=res.states_explored,
        )
    doc["failures"] = failures

    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        _print_text(doc)
    return 1 if failures else 0


def _print_text(doc: dict) -> None:
    print(f"growths: {' '.join(doc['instance'])}")
    print(f"LB = {doc['lb']}")
    if "plan" in doc:
        plan = doc["plan"]
        print(f"{doc['algo']} option {plan['option']}: alpha = {plan['alpha']}, z = {doc['z']}")
        for i, p in enumerate(plan["partitions"], 1):
            members = " ".join(f"b{m + 1}" for m in p["members"])
            print(f"  P{i} {p['kind']}: {members}  deadlines {p['deadlines']}")
        print(f"period = {doc['period']} days; {doc['verification']}")
        print(f"simulated elevation = {doc['simulation']['elevation']} over {doc['simulation']['horizon']} days")
        print("schedule:")
        for row in doc["schedule_preview"]:
            print(f"  {row}")
    elif "h_star" in doc:
        print(f"H* = {doc['h_star']} (witness cycle {doc['witness']}, {doc['states_explored']} states)")
    else:
        sim = doc["simulation"]
        print(f"ReduceMax elevation = {doc['elevation']} over {sim['horizon']} days"
              + (f", period {sim['period_detected']}" if sim["period_detected"] else ""))
    for f in doc["failures"]:
        print(f"FAIL {f}")


def _experiment(args) -> int:
    try:
        spec = ExperimentSpec.load(args.spec)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = run_experiment(spec)
    if not spec.output_csv:
        sys.stdout.write(result.csv_text())
    s = result.summary
    print(
        f"{s['instances']} instances; max z_PW/LB = {s['max_ratio_pw_lb'] or '-'}, "
        f"max z_PW2/LB = {s['max_ratio_pw2_lb'] or '-'} "
        f"({s['max_ratio_pw2_lb_dec'] or '-'}, bound {s['bound_guarantee']}); "
        f"{len(result.failures)} failures, {len(result.warnings)} warnings",
        file=sys.stderr,
    )
    for f in result.failures:
        print(f"FAIL {f}", file=sys.stderr)
    return 0 if result.passed else 1


def _worked(args) -> int:
    text, failures = reproduce()
    sys.stdout.write(text)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bgt", description="Bamboo garden trimming via pinwheel scheduling")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="schedule one instance file")
    s.add_argument("file")
    s.add_argument("--algo", choices=["pw", "pw2", "reducemax", "oracle"], default="pw2")
    s.add_argument("--horizon", type=int, default=None, help="simulation length in days")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    s.set_defaults(func=_solve)

    e = sub.add_parser("experiment", help="run a JSON experiment spec")
    e.add_argument("spec")
    e.set_defaults(func=_experiment)

    t = sub.add_parser("paper-tables", help="reproduce the built-in worked examples")
    t.set_defaults(func=_worked)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "horizon", None) is not None and args.horizon < 1:
        print("error: --horizon must be positive", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
