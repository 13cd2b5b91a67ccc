"""Experiment driver: run the algorithms on a corpus and tabulate ratios.

Reports are a CSV with the fixed column order :data:`COLUMNS` and a JSON
mirror. Rationals are written as ``num/den``; ratios also get a 6-decimal
companion column. Pass/fail logic compares exact fractions only.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .bounds import lower_bound
from .core import BGTInstance, format_rational, parse_instance
from .cycles import build_schedule, verify_schedule
from .generators import corpus, dyadic16_instance, garden16_instance, gen_lemma1
from .oracle import OracleLimitError, exact_optimum
from .pw_classic import build_plan_pw
from .pw_enhanced import plan_option_a, plan_option_b
from .simulator import reduce_max, simulate

log = logging.getLogger(__name__)

GUARANTEE_BOUND = Fraction(32000, 16947)
ASYMPTOTIC_BOUND = Fraction(12, 7)
PW_BOUND = Fraction(2)
REDUCE_MAX_TOLERANCE = Fraction(2) + Fraction(1, 100)
ALGORITHMS = ("pw", "pw2", "reducemax", "oracle")

COLUMNS = [
    "instance", "n", "sum_h", "lb",
    "z_pw", "elev_pw", "verify_pw",
    "z_a", "z_b", "z_pw2", "option", "elev_pw2", "verify_pw2", "remainder_excess",
    "h_star", "elev_reducemax", "period_reducemax",
    "ratio_pw_lb", "ratio_pw_lb_dec", "ratio_pw2_lb", "ratio_pw2_lb_dec",
    "ratio_pw_hstar", "ratio_pw_hstar_dec", "ratio_pw2_hstar", "ratio_pw2_hstar_dec",
    "ratio_reducemax_lb", "ratio_reducemax_lb_dec",
    "status",
]


def _q(x: Optional[Fraction]) -> str:
    return "" if x is None else format_rational(x)


def _dec(x: Optional[Fraction]) -> str:
    return "" if x is None else f"{float(x):.6f}"


@dataclass
class InstanceOutcome:
    row: dict
    values: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def check_plan(inst: BGTInstance, plan, label: str, failures: list[str]):
    """Build, verify and simulate (two full periods) one plan."""
    sched = build_schedule(plan)
    report = verify_schedule(plan, sched, inst)
    sim = simulate(inst, sched, 2 * sched.period)
    if not report.passed:
        failures.append(f"{label}: verification failed: {report.summary()}")
    if sim.elevation > plan.z:
        failures.append(f"{label}: simulated elevation {sim.elevation} exceeds z = {plan.z}")
    return sched, report, sim


def evaluate_instance(
    inst: BGTInstance,
    name: str = "",
    algorithms: Sequence[str] = ALGORITHMS,
    horizon: Optional[int] = None,
    oracle_max_bamboos: int = 4,
) -> InstanceOutcome:
    """One report row plus the hard failures and warnings it triggered."""
    unknown = set(algorithms) - set(ALGORITHMS)
    if unknown:
        raise ValueError(f"unknown algorithms {sorted(unknown)}")
    out = InstanceOutcome({c: "" for c in COLUMNS})
    row, vals, fail = out.row, out.values, out.failures
    lb = lower_bound(inst)
    row.update(instance=name, n=inst.n, sum_h=_q(inst.total), lb=_q(lb))
    vals["lb"] = lb
    h_star = None

    if "pw" in algorithms:
        plan = build_plan_pw(inst)
        _, rep, sim = check_plan(inst, plan, f"{name} PW", fail)
        vals.update(z_pw=plan.z, elev_pw=sim.elevation)
        row.update(z_pw=_q(plan.z), elev_pw=_q(sim.elevation), verify_pw="pass" if rep.passed else "fail")
        if plan.z > 2 * inst.total:
            fail.append(f"{name}: z_PW = {plan.z} exceeds 2 sum h = {2 * inst.total}")

    if "pw2" in algorithms:
        a, b = plan_option_a(inst), plan_option_b(inst)
        chosen = b if b is not None and b.z < a.z else a
        ok = True
        elev = None
        for plan in (a, b):
            if plan is None:
                continue
            _, rep, sim = check_plan(inst, plan, f"{name} PW2-{plan.option}", fail)
            ok = ok and rep.passed
            if plan is chosen:
                elev = sim.elevation
        vals.update(z_a=a.z, z_b=None if b is None else b.z, z_pw2=chosen.z, elev_pw2=elev)
        excess = sum(max(0, p.remainder_bins - p.remainder_bins_formula) for p in (a, b) if p)
        row.update(
            z_a=_q(a.z), z_b="inf" if b is None else _q(b.z), z_pw2=_q(chosen.z),
            option=chosen.option, elev_pw2=_q(elev), verify_pw2="pass" if ok else "fail",
            remainder_excess=excess,
        )
        vals["remainder_excess"] = excess
        ratio = chosen.z / lb
        if ratio > GUARANTEE_BOUND:
            fail.append(f"{name}: z_PW2/LB = {ratio} exceeds {GUARANTEE_BOUND}")

    if "oracle" in algorithms and inst.n <= oracle_max_bamboos:
        try:
            res = exact_optimum(inst, max_bamboos=oracle_max_bamboos)
        except OracleLimitError as exc:
            out.warnings.append(f"{name}: oracle skipped ({exc})")
        else:
            h_star = res.value
            vals["h_star"] = h_star
            row["h_star"] = _q(h_star)
            cyc = res.witness
            wsim = simulate(inst, lambda t: cyc[t % len(cyc)], 2 * len(cyc))
            if wsim.elevation > h_star:
                fail.append(f"{name}: oracle witness reaches {wsim.elevation} > H* = {h_star}")
            if h_star < lb:
                fail.append(f"{name}: H* = {h_star} below LB = {lb}")
            for key in ("elev_pw2", "elev_pw"):
                if vals.get(key) is not None and vals[key] < h_star:
                    fail.append(f"{name}: {key} = {vals[key]} below H* = {h_star}")

    if "reducemax" in algorithms:
        rm = reduce_max(inst, horizon)
        vals["elev_reducemax"] = rm.elevation
        row.update(elev_reducemax=_q(rm.elevation), period_reducemax=rm.period_detected or "")
        r = rm.elevation / lb
        row.update(ratio_reducemax_lb=_q(r), ratio_reducemax_lb_dec=_dec(r))
        if r > REDUCE_MAX_TOLERANCE:
            out.warnings.append(
                f"WARN {name}: ReduceMax elevation/LB = {r} > {REDUCE_MAX_TOLERANCE}; "
                f"growths = [{', '.join(_q(g) for g in inst.growths)}]"
            )

    for algo in ("pw", "pw2"):
        z = vals.get(f"z_{algo}")
        if z is None:
            continue
        r = z / lb
        row[f"ratio_{algo}_lb"], row[f"ratio_{algo}_lb_dec"] = _q(r), _dec(r)
        if h_star is not None:
            r = z / h_star
            row[f"ratio_{algo}_hstar"], row[f"ratio_{algo}_hstar_dec"] = _q(r), _dec(r)
    row["status"] = "FAIL" if fail else ("WARN" if out.warnings else "ok")
    return out


@dataclass
class ExperimentSpec:
    """What to run. ``generator`` is one of random, tight, worked, inline, files."""

    generator: str
    params: dict = field(default_factory=dict)
    count: int = 0
    seed: int = 0
    algorithms: list[str] = field(default_factory=lambda: ["pw", "pw2"])
    horizon: Optional[int] = None
    oracle_max_bamboos: int = 4
    workers: int = 1
    output_csv: Optional[str] = None
    output_json: Optional[str] = None
    name: str = "experiment"
    base_dir: Path = field(default=Path("."), repr=False)

    @classmethod
    def from_dict(cls, d: dict, base_dir=".") -> "ExperimentSpec":
        known = {k: v for k, v in d.items() if k in cls.__dataclass_fields__ and k != "base_dir"}
        extra = set(d) - set(known)
        if extra:
            raise ValueError(f"unknown experiment keys {sorted(extra)}")
        spec = cls(**known)
        spec.base_dir = Path(base_dir)
        return spec

    @classmethod
    def load(cls, path) -> "ExperimentSpec":
        path = Path(path)
        return cls.from_dict(json.loads(path.read_text(encoding="utf-8")), path.parent)

    def to_dict(self) -> dict:
        return {
            k: getattr(self, k)
            for k in self.__dataclass_fields__
            if k != "base_dir"
        }

    def instances(self) -> list[tuple[str, BGTInstance]]:
        p = self.params
        g = self.generator
        if g == "random":
            n = p.get("n", 16)
            n_range = (n, n) if isinstance(n, int) else tuple(n)
            profile = p.get("profile", "uniform")
            insts = corpus(profile, self.count, n_range, self.seed)
            return [(f"{profile}-{self.seed}-{i}", inst) for i, inst in enumerate(insts)]
        if g == "tight":
            eps = p.get("eps", "1/1000")
            return [(f"tight-n{n}", gen_lemma1(n, eps)) for n in p.get("n", [])]
        if g == "worked":
            return [("dyadic16", dyadic16_instance()), ("garden16", garden16_instance())]
        if g == "inline":
            return [
                (f"inline-{i}", BGTInstance.from_growths([str(x) for x in gs]))
                for i, gs in enumerate(p.get("instances", []))
            ]
        if g == "files":
            out = []
            for rel in p.get("paths", []):
                path = self.base_dir / rel
                out.append((Path(rel).stem, parse_instance(path.read_text(encoding="utf-8"))))
            return out
        raise ValueError(f"unknown generator {g!r}")


@dataclass
class ExperimentResult:
    rows: list[dict]
    summary: dict
    failures: list[str]
    warnings: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow(r)
        return buf.getvalue()

    def json_text(self, spec: Optional[ExperimentSpec] = None) -> str:
        doc = {"columns": COLUMNS, "rows": self.rows, "summary": self.summary,
               "failures": self.failures, "warnings": self.warnings}
        if spec is not None:
            doc["spec"] = spec.to_dict()
        return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"


def summarize(outcomes: Sequence[InstanceOutcome]) -> dict:
    def worst(num, den):
        best = None
        for o in outcomes:
            a, b = o.values.get(num), o.values.get(den)
            if a is None or b is None:
                continue
            r = a / b
            best = r if best is None or r > best else best
        return best

    summary = {"instances": len(outcomes)}
    for label, num, den in (
        ("max_ratio_pw_lb", "z_pw", "lb"),
        ("max_ratio_pw2_lb", "z_pw2", "lb"),
        ("max_ratio_pw_hstar", "z_pw", "h_star"),
        ("max_ratio_pw2_hstar", "z_pw2", "h_star"),
        ("max_ratio_reducemax_lb", "elev_reducemax", "lb"),
    ):
        r = worst(num, den)
        summary[label] = _q(r)
        summary[label + "_dec"] = _dec(r)
    summary["bound_pw"] = _q(PW_BOUND)
    summary["bound_asymptotic"] = _q(ASYMPTOTIC_BOUND)
    summary["bound_guarantee"] = _q(GUARANTEE_BOUND)
    summary["remainder_excess_instances"] = sum(
        1 for o in outcomes if o.values.get("remainder_excess")
    )
    summary["failures"] = sum(len(o.failures) for o in outcomes)
    summary["warnings"] = sum(len(o.warnings) for o in outcomes)
    return summary


def _evaluate_star(args) -> InstanceOutcome:
    return evaluate_instance(*args)


def run_instances(named: Sequence[tuple[str, BGTInstance]], algorithms=ALGORITHMS,
                  horizon=None, oracle_max_bamboos=4, workers: int = 1) -> ExperimentResult:
    """Evaluate every instance; rows come back in input order for any ``workers``."""
    jobs = [(inst, name, tuple(algorithms), horizon, oracle_max_bamboos) for name, inst in named]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_evaluate_star, jobs, chunksize=max(1, len(jobs) // (8 * workers))))
    else:
        outcomes = [_evaluate_star(j) for j in jobs]
    failures = [f for o in outcomes for f in o.failures]
    warnings = [w for o in outcomes for w in o.warnings]
    for w in warnings:
        log.warning(w)
    return ExperimentResult([o.row for o in outcomes], summarize(outcomes), failures, warnings)


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """Evaluate the spec's corpus and write the CSV/JSON reports it names."""
    result = run_instances(
        spec.instances(), spec.algorithms, spec.horizon, spec.oracle_max_bamboos, spec.workers
    )
    if spec.output_csv:
        path = spec.base_dir / spec.output_csv
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(result.csv_text(), encoding="utf-8")
    if spec.output_json:
        path = spec.base_dir / spec.output_json
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(result.json_text(spec), encoding="utf-8")
    return result
