# Exact optimum for tiny gardens by searching the graph of age vectors.
from bamboo_pinwheel.bounds import lower_bound
from bamboo_pinwheel.core import parse_instance
from bamboo_pinwheel.oracle import exact_optimum, feasible
from bamboo_pinwheel.pw_enhanced import run_pw2
from bamboo_pinwheel.simulator import simulate

inst = parse_instance("1, 0.51, 0.51")
print(feasible(inst, "2.04"), feasible(inst, "2.03"))

res = exact_optimum(inst)
print("H* =", res.value, "witness", [f"b{j + 1}" for j in res.witness], res.states_explored, "states")
cyc = res.witness
print("witness simulates to", simulate(inst, lambda t: cyc[t % len(cyc)], 2 * len(cyc)).elevation)

for text in ("1, 1/2, 1/3", "1, 3/4, 1/8, 1/8", "1, 5/8, 5/8, 1/2"):
    g = parse_instance(text)
    h = exact_optimum(g).value
    print(f"{text:18s} LB {str(lower_bound(g)):>6}  H* {str(h):>6}  PW'' {run_pw2(g)[1]}")
