"""
Fundamental groups of small origami manifolds
=============================================

A template glues Delzant polytopes along fold facets.  The fundamental
group of the manifold splits as the lattice quotient N/N_X times a free
group whose rank is the cycle rank of the template graph.
"""

from toric_origami import corpus
from toric_origami.invariants import fundamental_group, lattice_quotient_NX
from toric_origami.template import graph_stats

# Two squares glued along both vertical sides give S^2 x T^2.  Only the
# horizontal normals survive in X, so N/N_X is infinite cyclic.
t = corpus.load("s2xt2")
print("s2xt2:", lattice_quotient_NX(t), "|", fundamental_group(t))

# Trapezoids whose slanted sides are folded leave two X-normals that span
# an index-k sublattice.
for name in ("s3xs1", "lens_2", "lens_3"):
    t = corpus.load(name)
    print(f"{name}:", lattice_quotient_NX(t), "|", fundamental_group(t))

# Eight hexagons on the cube graph: every facet is a fold, so the whole
# group comes from the 5 independent cycles.
t = corpus.load("m2")
s = graph_stats(t)
print("m2: L =", s.L, "R =", s.R, "cycle rank =", s.cycle_rank, "|", fundamental_group(t))
