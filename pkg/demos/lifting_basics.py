"""
Lifting properties between small groups
=======================================

A morphism f lifts against g when every commutative square with f on the
left and g on the right has a diagonal. Here we ask a few such questions
and look at what a failing square looks like.
"""

from liftgroups.lifting import find_lift, lifts
from liftgroups.parsing import Parser

p = Parser()

# %%
# A map out of the trivial group lifts against g exactly when g is onto.
# The sign map of S3 is onto C2, the inclusion of C2 into S3 is not.
print(lifts(p.morphism("0->Z"), p.morphism("S3->>C2:sign")).holds)
print(lifts(p.morphism("0->Z"), p.morphism("C2>->S3")).holds)

# %%
# Killing the generator of Z tests injectivity instead.
print(lifts(p.morphism("Z->0"), p.morphism("C2>->S3")).holds)
print(lifts(p.morphism("Z->0"), p.morphism("S3->>C2:sign")).holds)

# %%
# Abelianization F2 -> Z x Z lifts against G -> 0 only for abelian G.
# For S3 the engine hands back a square: the two generators of F2 go to a
# non-commuting pair, and no diagonal through Z x Z exists.
result = lifts(p.morphism("F2->Z2ab"), p.morphism("S3->0"))
sq = result.counterexample
print(result.holds, sq.i.gen_images, find_lift(sq))
s3 = sq.i.target
a, b = sq.i.gen_images
print("ab == ba?", s3.mul[a][b] == s3.mul[b][a])

# %%
# The count behind the verdict: the number of commuting squares, and a
# diagonal for the last one when the property holds.
ok = lifts(p.morphism("F2->Z2ab"), p.morphism("C2xC2->0"))
print(ok.holds, ok.squares, ok.witness_lift)
