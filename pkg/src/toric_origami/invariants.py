"""Fundamental group, first homology, prismatic structure and Euler characteristic."""
from dataclasses import dataclass
from typing import Optional

from .errors import BoundaryWithCycles, StructuralContradiction
from .lattice import AbelianGroup, cokernel_structure
from .polytope import DelzantPolytope
from .template import OrigamiTemplate, graph_stats, orbit_space_summary


@dataclass(frozen=True)
class Pi1Descriptor:
    """pi_1(M) = cyclic_part x F_free_rank (free group on ``free_rank`` letters)."""

    cyclic_part: AbelianGroup
    free_rank: int

    @property
    def is_trivial(self) -> bool:
        return self.cyclic_part.is_trivial and self.free_rank == 0

    def __str__(self):
        parts = []
        if not self.cyclic_part.is_trivial:
            parts.append(str(self.cyclic_part))
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"F_{self.free_rank}")
        return " x ".join(parts) if parts else "1"

    def to_dict(self):
        return {"cyclic_part": self.cyclic_part.to_dict(), "free_rank": self.free_rank,
                "text": str(self)}


@dataclass(frozen=True)
class HomologyReport:
    h1: AbelianGroup
    torsion_h2: AbelianGroup


@dataclass(frozen=True)
class PrismaticReport:
    prismatic: bool
    fiber: Optional[DelzantPolytope] = None


def lattice_quotient_NX(t: OrigamiTemplate) -> AbelianGroup:
    """N / N_X, where N_X is spanned by the normals of the facets of X."""
    q = cokernel_structure(orbit_space_summary(t).normal_matrix, t.dim)
    # trivial, finite cyclic or infinite cyclic, never anything else
    assert q.is_cyclic, f"N/N_X = {q} is not cyclic"
    return q


def fundamental_group(t: OrigamiTemplate) -> Pi1Descriptor:
    ell = t.cycle_rank
    if t.dangling_edges and ell > 0:
        raise BoundaryWithCycles("fundamental group with boundary is only known for trees")
    q = lattice_quotient_NX(t)
    if ell == 0 and not t.dangling_edges:
        # a leaf polytope has a vertex off every fold, and its normals span N
        assert q.is_trivial, "acyclic template with nontrivial N/N_X"
    return Pi1Descriptor(q, ell)


def first_homology(t: OrigamiTemplate) -> HomologyReport:
    """H_1(M) (the abelianised fundamental group) and the torsion of H^2(M)."""
    pi1 = fundamental_group(t)
    q = pi1.cyclic_part
    return HomologyReport(AbelianGroup(pi1.free_rank + q.free_rank, q.invariant_factors),
                          q.torsion)


def is_simply_connected(t: OrigamiTemplate) -> bool:
    return fundamental_group(t).is_trivial


def detect_prismatic(t: OrigamiTemplate) -> PrismaticReport:
    """Whether M splits as T^2 x Y; returns the fiber polytope of Y if so."""
    q = lattice_quotient_NX(t)
    if not (q.free_rank == 1 and not q.invariant_factors):
        return PrismaticReport(False)

    def fail(why):
        raise StructuralContradiction(f"N/N_X = Z but {why}")

    if t.dangling_edges:
        fail("the template has boundary")
    g = t.graph()
    if t.cycle_rank != 1 or any(deg != 2 for _, deg in g.degree()):
        fail("the template graph is not a cycle")
    for v, p in t.polytopes.items():
        folds = t.fold_facets(v)
        if len(folds) != 2:
            fail(f"polytope {v!r} has {len(folds)} fold facets")
        a, b = folds
        sides = frozenset(range(p.n_facets)) - {a, b}
        if p.adjacency[a] != sides or p.adjacency[b] != sides:
            fail(f"polytope {v!r} is not a prism over its fold facet")
        fa, fb = p.facet_subpolytope(a).polytope, p.facet_subpolytope(b).polytope
        if fa.f_vector != fb.f_vector:
            fail(f"fold facets of {v!r} differ combinatorially")
    first = t.vertices[0]
    return PrismaticReport(True, t.polytopes[first].facet_subpolytope(
        t.fold_facets(first)[0]).polytope)


def euler_characteristic(t: OrigamiTemplate) -> int:
    """chi(M) = number of torus-fixed points = vertices of X off the fold."""
    chi = orbit_space_summary(t).fixed_point_count
    assert chi != 1, "a toric origami manifold never has exactly one fixed point"
    return chi


def summary(t: OrigamiTemplate) -> dict:
    """Everything the ``invariants`` command reports, as plain data."""
    stats = graph_stats(t)
    pi1 = fundamental_group(t)
    hom = first_homology(t)
    out = {
        "dimension": 2 * t.dim,
        "L": stats.L, "R": stats.R, "cycle_rank": stats.cycle_rank,
        "orientable": stats.bipartite,
        "N_mod_NX": q_dict(pi1.cyclic_part),
        "pi1": pi1.to_dict(),
        "H1": q_dict(hom.h1),
        "torsion_H2": q_dict(hom.torsion_h2),
        "simply_connected": pi1.is_trivial,
    }
    if not t.dangling_edges:
        pr = detect_prismatic(t)
        out["prismatic"] = pr.prismatic
        out["fiber"] = None if pr.fiber is None else {
            "dimension": pr.fiber.dim, "facets": pr.fiber.n_facets,
            "vertices": len(pr.fiber.vertices), "h_vector": list(pr.fiber.h_vector)}
        out["euler_characteristic"] = euler_characteristic(t)
    return out


def q_dict(g: AbelianGroup) -> dict:
    d = g.to_dict()
    d["text"] = str(g)
    return d
