"""Betti numbers of a closed toric origami manifold from its pieces.

M is covered by neighbourhoods of the components A_i of M minus the fold,
whose pairwise overlaps retract onto fold components Z.  The alternating
sum over the Mayer-Vietoris sequence, together with the values that are
known outright (degrees 0, 1, 2n-1, 2n) and Poincare duality for
orientable M, gives a linear system for the remaining Betti numbers.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .cohomology import complement_cohomology, fold_component_invariants, toric_betti
from .errors import HasBoundary, NotPrismatic, WrongDimension
from .invariants import detect_prismatic, euler_characteristic, lattice_quotient_NX
from .lattice import AbelianGroup
from .template import OrigamiTemplate, graph_stats

CLOSED_FORM_DIM4 = "closed_form_dim4"
KUNNETH_PRISMATIC = "kunneth_prismatic"
CONSTRAINT_SOLVED = "constraint_solved"
UNDERDETERMINED = "underdetermined"

ORIENTATION_NOTE = ("template graph is not bipartite, so M is not orientable; the values "
                    "b^0 = b^2n = 1 and the closed forms assume an orientable manifold")


@dataclass(frozen=True)
class Relation:
    """The linear relation sum(coeff * b^k) = rhs."""

    coeffs: Tuple[Tuple[int, int], ...]
    rhs: int

    @classmethod
    def make(cls, coeffs: Dict[int, int], rhs: int) -> "Relation":
        return cls(tuple(sorted((k, c) for k, c in coeffs.items() if c)), rhs)

    @property
    def trivial(self) -> bool:
        return not self.coeffs

    def holds(self, betti) -> bool:
        return sum(c * betti[k] for k, c in self.coeffs) == self.rhs

    def __str__(self):
        # b2 = b4 reads better than b2 - b4 = 0
        if self.rhs == 0 and len(self.coeffs) == 2 and \
                sorted(c for _, c in self.coeffs) == [-1, 1]:
            (a, _), (b, _) = sorted(self.coeffs, key=lambda kc: -kc[1])
            return f"b{a} = b{b}"
        out = ""
        for k, c in self.coeffs:
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            out += f" {sign} {mag}b{k}" if out else f"{'-' if c < 0 else ''}{mag}b{k}"
        return f"{out or '0'} = {self.rhs}"

    def to_dict(self):
        return {"coefficients": {str(k): c for k, c in self.coeffs}, "rhs": self.rhs,
                "text": str(self)}


@dataclass(frozen=True)
class BettiReport:
    """Betti numbers b^0..b^2n; ``None`` marks a value the data does not determine."""

    dim: int
    betti: Tuple[Optional[int], ...]
    method: str
    constraints: Tuple[Relation, ...] = ()
    torsion_H2: AbelianGroup = AbelianGroup()
    euler_characteristic: Optional[int] = None
    provenance: str = ""
    notes: Tuple[str, ...] = ()

    @property
    def determined(self) -> bool:
        return all(b is not None for b in self.betti)

    def to_dict(self):
        return {
            "dimension": self.dim,
            "betti": list(self.betti),
            "method": self.method,
            "determined": self.determined,
            "constraints": [r.to_dict() for r in self.constraints],
            "torsion_H2": str(self.torsion_H2),
            "euler_characteristic": self.euler_characteristic,
            "provenance": self.provenance,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class MVSystem:
    """Known data and identities constraining the Betti numbers of M."""

    dim: int
    a_ranks: Dict[str, Tuple[int, ...]]
    z_ranks: Dict[str, Tuple[int, ...]]
    fixed: Dict[int, int]
    relations: Tuple[Relation, ...]
    pd: Tuple[Relation, ...]
    euler_characteristic: int

    @property
    def unknowns(self) -> Tuple[int, ...]:
        return tuple(k for k in range(self.dim + 1) if k not in self.fixed)

    def residual(self) -> Tuple[Relation, ...]:
        """Relations with fixed values substituted, trivial ones dropped."""
        out = []
        for r in self.relations + self.pd:
            coeffs = {k: c for k, c in r.coeffs if k not in self.fixed}
            rhs = r.rhs - sum(c * self.fixed[k] for k, c in r.coeffs if k in self.fixed)
            red = Relation.make(coeffs, rhs)
            if red.trivial:
                assert rhs == 0, f"fixed Betti numbers violate {r}"
            elif red not in out:
                out.append(red)
        return tuple(out)


def _closed(t: OrigamiTemplate):
    if t.dangling_edges:
        raise HasBoundary("Betti numbers are computed for closed templates only")


def _notes(t):
    return () if graph_stats(t).bipartite else (ORIENTATION_NOTE,)


def _odd_one(t: OrigamiTemplate) -> int:
    return t.cycle_rank + lattice_quotient_NX(t).free_rank


def betti_dim4(t: OrigamiTemplate) -> BettiReport:
    if t.dim != 2:
        raise WrongDimension(f"expected a 4-manifold, template has dimension {2 * t.dim}")
    _closed(t)
    torsion = lattice_quotient_NX(t).torsion
    chi = euler_characteristic(t)
    if detect_prismatic(t).prismatic:
        betti = (1, 2, 2, 2, 1)
        why = "prismatic 4-manifold, homeomorphic to S^2 x T^2"
    else:
        ell = t.cycle_rank
        b2 = chi + 2 * t.R - 2 * t.L
        betti = (1, ell, b2, ell, 1)
        why = "b1 = b3 = 1 + R - L, b2 = #fixed points + 2R - 2L"
    assert sum((-1) ** k * b for k, b in enumerate(betti)) == chi
    return BettiReport(4, betti, CLOSED_FORM_DIM4, (), torsion, chi, why, _notes(t))


def betti_prismatic(t: OrigamiTemplate) -> BettiReport:
    _closed(t)
    pr = detect_prismatic(t)
    if not pr.prismatic:
        raise NotPrismatic("N/N_X is not infinite cyclic")
    fiber = toric_betti(pr.fiber) if pr.fiber.dim else (1,)
    torus = (1, 2, 1)
    betti = [0] * (len(fiber) + 2)
    for i, a in enumerate(fiber):
        for j, b in enumerate(torus):
            betti[i + j] += a * b
    chi = euler_characteristic(t)
    assert chi == 0 == sum((-1) ** k * b for k, b in enumerate(betti))
    return BettiReport(2 * t.dim, tuple(betti), KUNNETH_PRISMATIC, (), AbelianGroup(), chi,
                       "Kunneth formula for T^2 x Y, Y the toric manifold of the fiber "
                       "polytope", _notes(t))


def mv_constraint_system(t: OrigamiTemplate) -> MVSystem:
    _closed(t)
    top = 2 * t.dim
    a_ranks = {}
    for v, p in t.polytopes.items():
        folds = t.fold_facets(v)
        a_ranks[v] = complement_cohomology(p, folds).betti if folds else toric_betti(p)
    z_ranks = {}
    for e in t.ordinary_edges:
        end = e.ends[0]
        z = fold_component_invariants(t.polytopes[end.vertex], end.facet)
        assert sum((-1) ** k * b for k, b in enumerate(z.betti)) == 0
        z_ranks[e.id] = z.betti

    b1 = _odd_one(t)
    fixed = {0: 1, 1: b1, top - 1: b1, top: 1}
    if top == 2:
        fixed = {0: 1, 1: b1, 2: 1}

    def total(ranks, k):
        return sum(r[k] for r in ranks.values() if k < len(r))

    euler_rhs = sum((-1) ** k * (total(a_ranks, k) - total(z_ranks, k)) for k in range(top + 1))
    relations = [Relation.make({k: (-1) ** k for k in range(top + 1)}, euler_rhs)]
    if not z_ranks:
        # a single piece and no fold: M is that piece, degree by degree
        (ranks,) = a_ranks.values()
        relations += [Relation.make({k: 1}, ranks[k]) for k in range(top + 1)]
    pd = ()
    if graph_stats(t).bipartite:
        pd = tuple(Relation.make({k: 1, top - k: -1}, 0) for k in range(1, t.dim))
    chi = euler_characteristic(t)
    assert euler_rhs == chi, f"Mayer-Vietoris Euler sum {euler_rhs} != fixed points {chi}"
    return MVSystem(top, a_ranks, z_ranks, fixed, tuple(relations), pd, chi)


def _solve(system: MVSystem) -> Optional[Dict[int, Fraction]]:
    """Unique solution of the residual system for the unknowns, or None."""
    unknowns = system.unknowns
    rows = [[Fraction(dict(r.coeffs).get(k, 0)) for k in unknowns] + [Fraction(r.rhs)]
            for r in system.residual()]
    col_of = {}
    rank = 0
    for c in range(len(unknowns)):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        rows[rank] = [x / rows[rank][c] for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        col_of[c] = rank
        rank += 1
    assert all(row[-1] == 0 for row in rows[rank:]), "inconsistent Betti constraints"
    if rank < len(unknowns):
        return None
    return {k: rows[col_of[c]][-1] for c, k in enumerate(unknowns)}


def solve_betti(t: OrigamiTemplate) -> BettiReport:
    """Betti numbers of M by the strongest method that applies."""
    _closed(t)
    if t.dim == 2:
        return betti_dim4(t)
    if detect_prismatic(t).prismatic:
        return betti_prismatic(t)
    system = mv_constraint_system(t)
    torsion = lattice_quotient_NX(t).torsion
    solution = _solve(system)
    known = dict(system.fixed)
    if solution is not None:
        for k, x in solution.items():
            assert x.denominator == 1 and x >= 0, f"b{k} solves to {x}"
            known[k] = int(x)
        betti = tuple(known[k] for k in range(system.dim + 1))
        return BettiReport(system.dim, betti, CONSTRAINT_SOLVED, (), torsion,
                           system.euler_characteristic,
                           "Mayer-Vietoris alternating sum with fixed end degrees",
                           _notes(t))
    betti = tuple(known.get(k) for k in range(system.dim + 1))
    return BettiReport(system.dim, betti, UNDERDETERMINED, system.residual(), torsion,
                       system.euler_characteristic,
                       "Mayer-Vietoris alternating sum; connecting maps not computed",
                       _notes(t))
