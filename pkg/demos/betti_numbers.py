"""
Betti numbers from Mayer-Vietoris
=================================

In dimension 4 everything is forced by the template.  In dimension 6
the ranks of the pieces only give linear relations, and the solver says
which Betti numbers remain open.
"""

from toric_origami import corpus
from toric_origami.assembly import mv_constraint_system, solve_betti

for name in ("cp2", "s2xt2", "m1", "m2"):
    r = solve_betti(corpus.load(name))
    print(f"{name:6s} {r.method:18s} {r.betti}  chi = {r.euler_characteristic}")

# A single toric piece: the relations pin every degree down.
r = solve_betti(corpus.load("truncated_cube"))
print("truncated_cube", r.method, r.betti)

# Two truncated cubes glued along both pairs of faces.
t = corpus.load("double_truncated_cube")
system = mv_constraint_system(t)
print("fixed:", system.fixed)
print("piece ranks:", system.a_ranks)
print("fold ranks:", system.z_ranks)
r = solve_betti(t)
print(r.method, r.betti)
for rel in r.constraints:
    print("  ", rel)
