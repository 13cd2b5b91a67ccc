# The 16-bamboo garden: classic pinwheel next to the four-class refinement.
from bamboo_pinwheel.bounds import lower_bound
from bamboo_pinwheel.cycles import build_schedule
from bamboo_pinwheel.generators import garden16_instance
from bamboo_pinwheel.pw_classic import build_plan_pw
from bamboo_pinwheel.pw_enhanced import classify_instance, plan_option_a, plan_option_b, run_pw2

garden = garden16_instance()
print("growths:", [str(g) for g in garden.growths])
print("sum h =", garden.total, " LB =", lower_bound(garden))

# PW rounds every growth up to a power of 1/2 and fills unit bins in order
pw = build_plan_pw(garden)
print("\nPW: alpha =", pw.alpha, " z =", pw.z)
for p in pw.partitions:
    print("  ", [f"b{m + 1}" for m in p.members], [str(h) for h in p.h_dd])

# the refinement sorts bamboos into four classes first
for c in classify_instance(garden):
    print(f"  b{c.bamboo + 1:<3} h={str(garden.growths[c.bamboo]):<7} {c.subset}  h''a={c.h_dd_a}  h''b={c.h_dd_b}")

a, b = plan_option_a(garden), plan_option_b(garden)
print("\noption a: alpha =", a.alpha, " z =", a.z)
print("option b: alpha =", b.alpha, " z =", b.z, " (2 h(j*) alpha, j* = b%d)" % (b.j_star + 1))
best, z = run_pw2(garden)
print("returned:", best.option, z)

# one round of partitions per row
print(build_schedule(best).dump(4 * best.alpha))
