"""
Every characterization, one group at a time
===========================================

Each diagram turns a group property into a lifting question. We build the
default universe of groups up to order 16 and ask every diagram about a few
familiar groups, comparing against the textbook definition.
"""

from liftgroups.catalog import default_universe
from liftgroups.characterizations import check_diagram
from liftgroups.parsing import Parser

u = default_universe(16)
p = Parser(u)
print(len(u.groups), "groups,", len(u.morphisms), "morphisms")

# %%
# Properties of a single group.
for name in ["C2xC4", "S3", "Q8", "D6", "A4"]:
    g = p.group(name)
    row = []
    for d in ["c_abelian", "e_solvable", "h_odd", "m_nilpotent"]:
        v = check_diagram(d, g, u)
        row.append(f"{d.split('_')[1]}={v.via_lifting}{'' if v.agree else '!'}")
    print(f"{name:6s}", " ".join(row))

# %%
# Properties of a group relative to a prime.
for name in ["C9", "D4", "C15"]:
    g = p.group(name)
    print(name, [(q, check_diagram("g_pgroup", (g, q), u).via_lifting) for q in (2, 3, 5)])

# %%
# Properties of a morphism: injective, surjective, normally generating,
# subnormal image.
for text in ["C2>->S3", "C3>->S3", "S4->>S3", "C2>->D4"]:
    f = p.morphism(text)
    verdicts = {d: check_diagram(d, f, u).via_lifting
                for d in ["a_surjective", "b_injective", "k_normal_closure", "l_subnormal"]}
    print(f"{text:9s}", verdicts)
