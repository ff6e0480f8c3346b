"""
Why a non-subnormal subgroup fails to lift
==========================================

For D inside G, descend G = H0, H1 = ncl_H0(D), H2 = ncl_H1(D), ... until the
chain stops at D'. D is subnormal exactly when D' = D. The square with
D -> D' on the left and D -> G on the right then has no diagonal whenever
D' is bigger than D, because D normally generates D'.
"""

from liftgroups.catalog import default_universe
from liftgroups.characterizations import check_diagram, checker
from liftgroups.groups import direct_product, subgroup_generated
from liftgroups.lifting import find_lift
from liftgroups.oracles import minimal_subnormal_over, subnormal_oracle
from liftgroups.parsing import Parser

u = default_universe(12)
p = Parser(u)

# %%
# A transposition in S3 x C2 is not subnormal; the smallest subnormal
# subgroup over it is S3 x {e}.
s3, c2 = p.group("S3"), p.group("C2")
g = direct_product(s3, c2).group
t = next(x for x in range(6) if s3.element_orders[x] == 2)
d = subgroup_generated(g, [t * 2 + c2.identity])
print("subnormal:", subnormal_oracle(d, g) is not None)
print("|D'| =", len(minimal_subnormal_over(d, g)))

# %%
# The same subgroup as a morphism, fed to the subnormality diagram.
c = checker(u)
incl = c.subgroup_inclusion(d)
v = check_diagram("l_subnormal", incl, u)
print(v.via_lifting, v.via_oracle, v.witnesses[0])
f_w, square = c._subnormal_witness(incl)
print("square commutes:", square.commutes(), " diagonal:", find_lift(square))

# %%
# A chain of normal subgroups in D4 makes every subgroup subnormal.
d4 = p.group("D4")
for text in ["C2>->D4", "D2>->D4", "C4>->D4"]:
    print(text, check_diagram("l_subnormal", p.morphism(text), u).via_lifting)
