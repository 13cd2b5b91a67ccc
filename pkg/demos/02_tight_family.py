# One unit bamboo plus n bamboos of growth 1/2 + eps: PW pays n + 1 while
# the optimum stays near n/2 + 1.
from fractions import Fraction

from bamboo_pinwheel.bounds import lower_bound
from bamboo_pinwheel.generators import gen_lemma1
from bamboo_pinwheel.oracle import exact_optimum
from bamboo_pinwheel.pw_classic import build_plan_pw
from bamboo_pinwheel.pw_enhanced import run_pw2

eps = Fraction(1, 1000)
print(" n   z_PW   z_PW''     LB        H*        z_PW/LB")
for n in range(2, 21, 2):
    inst = gen_lemma1(n, eps)
    z_pw = build_plan_pw(inst).z
    _, z2 = run_pw2(inst)
    lb = lower_bound(inst)
    h_star = exact_optimum(inst, max_bamboos=n + 1).value if n <= 4 else None
    print(f"{n:2d}  {str(z_pw):>5} {str(z2):>9} {str(lb):>9} {str(h_star or '-'):>9}   {float(z_pw / lb):.4f}")

# the closed form for the optimum, checked where the oracle can reach
for n in (2, 4):
    print(n, Fraction(n, 2) + 1 + (n + 2) * eps == exact_optimum(gen_lemma1(n, eps), max_bamboos=n + 1).value)
