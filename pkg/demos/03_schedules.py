# From a plan to a perpetual schedule: member cycles, verification, simulation.
import tempfile
from pathlib import Path

from bamboo_pinwheel.core import parse_instance
from bamboo_pinwheel.cycles import (
    build_cycle,
    build_cycle_dyadic,
    build_cycle_triadic,
    build_schedule,
    cycle_gaps,
    is_schedulable,
    verify_schedule,
)
from bamboo_pinwheel.pw_enhanced import run_pw2
from bamboo_pinwheel.simulator import simulate

build_cycle_dyadic([2, 4, 4])      # [0, 1, 0, 2]
build_cycle_triadic([3, 3, 6, 6])  # [0, 1, 2, 0, 1, 3]
cyc = build_cycle([2, 6, 12, 12])  # mixed deadlines
print(cyc, cycle_gaps(cyc, range(4)))
print("{2, 3, 12} schedulable:", is_schedulable([2, 3, 12]))  # density 11/12, still impossible

inst = parse_instance("1, 0.7, 0.64, 0.3, 0.26, 0.2, 0.12, 0.11, 0.05, 0.03")
plan, z = run_pw2(inst)
sched = build_schedule(plan)
print("option", plan.option, "z =", z, "period =", sched.period)
print(verify_schedule(plan, sched, inst).summary())

rep = simulate(inst, sched, 2 * sched.period, trace=True)
print("elevation over two periods:", rep.elevation)
print([str(h) for h in rep.per_bamboo_max])

out = Path(tempfile.mkdtemp()) / "trace.csv"
rep.write_trace_csv(out)
print(out.read_text().splitlines()[:4])
