# ReduceMax: always cut the tallest bamboo. No guarantee is known, but in
# practice it lands close to the lower bound.
import time

from bamboo_pinwheel.bounds import lower_bound
from bamboo_pinwheel.generators import corpus, garden16_instance
from bamboo_pinwheel.pw_enhanced import run_pw2
from bamboo_pinwheel.simulator import reduce_max, reduce_max_policy, simulate_online

garden = garden16_instance()
rm = reduce_max(garden, 10_000)
cycle = f"repeats every {rm.period_detected} days" if rm.period_detected else "no repeat within the horizon"
print("garden: elevation", rm.elevation, "LB", lower_bound(garden), "; age vector", cycle)

# the fast kernel agrees with a literal run on exact heights
slow = simulate_online(garden, reduce_max_policy, 2000)
print("exact run agrees:", slow.elevation == reduce_max(garden, 2000, detect_period=False).elevation)

for profile in ("uniform", "s2-heavy", "small-growth"):
    t = time.perf_counter()
    worst_rm = worst_pw2 = 0
    for inst in corpus(profile, 10, (20, 30), 1):
        lb = lower_bound(inst)
        worst_rm = max(worst_rm, reduce_max(inst).elevation / lb)
        worst_pw2 = max(worst_pw2, run_pw2(inst)[1] / lb)
    print(f"{profile:13s} max ReduceMax/LB {float(worst_rm):.4f}  max PW''/LB {float(worst_pw2):.4f}"
          f"  ({time.perf_counter() - t:.1f}s)")
