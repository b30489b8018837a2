"""A short tour: colours, reduction, white-vector counts and one orbit.

Run with ``python3 demos/walkthrough.py``.  Takes a few seconds.
"""

import numpy as np

from albert_e6 import albert as al
from albert_e6 import orbits as ob
from albert_e6.albert import AlbertVector
from albert_e6.gf import field
from albert_e6.octonion import Octonion
from albert_e6.orbits import reduce_to_canonical
from albert_e6.se6 import TAU

F = field(3)
rng = np.random.default_rng(1)

print("Colours over GF(3)")
for text in ("(0,0,1|0;0;0)", "(0,1,1|0;0;0)", "(2,1,1|0;0;0)"):
    X = AlbertVector.parse(F, text)
    print(f"  {text:16} colour={al.classify(X).name.lower():6} Delta={al.delta(X)}")

print("\nReducing a random vector")
X = AlbertVector.random(F, rng, nonzero=True)
cf = reduce_to_canonical(X)
print(f"  X   = {X}")
print(f"  rep = {cf.representative}  ({cf.kind.name.lower()}, {len(cf.word)} generators)")
assert cf.word.apply(X) == cf.representative

print("\nWhite vectors")
for q in (2, 3, 4, 5):
    n10, n26, nout, total = ob.count_white_stratified(q)
    print(f"  q={q}: {n10} + {n26} + {nout} = {total}")

print("\nSE6(q) orders")
for q in (2, 3, 4):
    print(f"  q={q}: |SE6| = {ob.order_se6(q)}, |E6| = {ob.order_e6(q)}")

print("\nA small orbit: tau permutes the three coordinate points")
orbit = ob.white_point_orbit_bfs(field(2), AlbertVector.basis(field(2), 2), [TAU])
for p in orbit.points():
    print(f"  {p}")

u = Octonion.basis(F, "e1") + Octonion.one(F)
print(f"\nnorm(e1 + 1) over GF(3) = {u.norm()}, so P_u is defined")
