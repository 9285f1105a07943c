"""
Cohomology of a cube with a corner cut off, minus two divisors
==============================================================

Facet 0 is the cut (a triangle) and facet 1 is a square face disjoint
from it.  Removing the two divisors leaves a space whose cohomology is
read off from kernels and cokernels of the maps phi_k.
"""

from toric_origami import corpus
from toric_origami.cohomology import (complement_cohomology, fold_component_invariants,
                                      graded_basis, phi_tilde, toric_betti)

p = corpus.load("truncated_cube").polytopes["Y"]
print("h-vector:", p.h_vector, " toric Betti:", toric_betti(p))

b1 = graded_basis(p, 1)
print("degree-2 basis:", [b1.label(i) for i in range(b1.rank)])

# phi_1 sends the unit classes of the two divisors to y0 and y1.
print("phi_1 =\n", phi_tilde(p, [0, 1], 1).matrix)

cc = complement_cohomology(p, [0, 1])
print("H^*(Y - B):", [str(g) for g in cc.groups])
print("degree-5 kernel generator:", cc.kernel_generators[5].ravel().tolist(),
      "in", phi_tilde(p, [0, 1], 3).source_labels())

# The circle bundles over the two divisors.
for s in (0, 1):
    z = fold_component_invariants(p, s)
    print(f"fold over facet {s}: Euler class {z.euler_class}, Betti {z.betti}")
