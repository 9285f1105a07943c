"""Integral cohomology of toric pieces through the Stanley-Reisner presentation.

For a Delzant polytope with facets F_1..F_d the cohomology of the toric
manifold is Z[y_1..y_d] modulo the monomials of non-faces and the linear
forms sum_i <v, u_i> y_i.  Each even degree is handled as a finitely
generated abelian group: face monomials modulo the degree-k relations,
reduced with Smith normal form.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (DegreeOutOfRange, EmptyFoldSet, FoldFacetsIntersect, InvalidFacet,
                     NotAFoldContext, TorsionFound)
from .lattice import (AbelianGroup, as_int_matrix, cokernel_structure, determinant,
                      integer_kernel, rational_rank, smith_decomposition, solve_unit)
from .polytope import DelzantPolytope

Monomial = Tuple[int, ...]


def _compositions(total, parts):
    """Ordered tuples of ``parts`` positive ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cut in combinations(range(1, total), parts - 1):
        bounds = (0,) + cut + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def face_monomials(p: DelzantPolytope, k: int) -> List[Monomial]:
    """Degree-k exponent vectors whose support is a face of ``p``."""
    d = p.n_facets
    out = []
    for face in p.faces:
        if len(face) > k:
            continue
        idx = sorted(face)
        for exps in _compositions(k, len(idx)):
            e = [0] * d
            for i, x in zip(idx, exps):
                e[i] = x
            out.append(tuple(e))
    return sorted(out, reverse=True)


def is_face_monomial(p: DelzantPolytope, m: Monomial) -> bool:
    return p.intersects(i for i, x in enumerate(m) if x)


def monomial_str(m: Monomial, var: str = "y", names: Sequence = None) -> str:
    if not any(m):
        return "1"
    parts = []
    for i, x in enumerate(m):
        if x:
            name = f"{var}{names[i] if names is not None else i}"
            parts.append(name if x == 1 else f"{name}^{x}")
    return "*".join(parts)


@dataclass(frozen=True, eq=False)
class GradedBasis:
    """The degree-k part (cohomological degree 2k) of H*(Y; Z).

    ``projection`` (rank x len(monomials)) sends a vector of face-monomial
    coefficients to coordinates in the chosen basis; ``lifts`` are vectors in
    monomial coordinates representing each basis element.
    """

    polytope: DelzantPolytope
    degree: int
    monomials: Tuple[Monomial, ...]
    relation_matrix: np.ndarray
    projection: np.ndarray
    lifts: Tuple[Tuple[int, ...], ...]
    monomial_basis: bool

    @property
    def rank(self) -> int:
        return len(self.lifts)

    @property
    def index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    def vector(self, poly: Dict[Monomial, int]) -> List[int]:
        """Face-monomial coefficient vector of a polynomial (non-faces dropped)."""
        index = self.index
        vec = [0] * len(self.monomials)
        for m, c in poly.items():
            if c and m in index:
                vec[index[m]] += c
            elif c and sum(m) != self.degree:
                raise ValueError(f"monomial {m} has the wrong degree")
        return vec

    def coords(self, poly: Dict[Monomial, int]) -> List[int]:
        return self.project(self.vector(poly))

    def project(self, vec: Sequence[int]) -> List[int]:
        proj = self.projection
        return [sum(int(proj[r, j]) * vec[j] for j in range(len(vec)) if vec[j])
                for r in range(self.rank)]

    def lift_poly(self, i: int) -> Dict[Monomial, int]:
        return {m: c for m, c in zip(self.monomials, self.lifts[i]) if c}

    def label(self, i: int, var: str = "y", names: Sequence = None) -> str:
        terms = []
        for m, c in self.lift_poly(i).items():
            s = monomial_str(m, var, names)
            terms.append(s if c == 1 else f"-{s}" if c == -1 else f"{c}*{s}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    def relation_vectors(self):
        rel = self.relation_matrix
        return [list(rel[:, j]) for j in range(rel.shape[1])]


@lru_cache(maxsize=4096)
def graded_basis(p: DelzantPolytope, k: int) -> GradedBasis:
    if not 0 <= k <= p.dim:
        raise DegreeOutOfRange(f"degree {k} outside 0..{p.dim}")
    monos = face_monomials(p, k)
    index = {m: i for i, m in enumerate(monos)}
    n, d = p.dim, p.n_facets
    relations = []
    if k >= 1:
        for base in face_monomials(p, k - 1):
            for j in range(n):
                vec = [0] * len(monos)
                for i in range(d):
                    c = p.normals[i][j]
                    if not c:
                        continue
                    m = list(base)
                    m[i] += 1
                    pos = index.get(tuple(m))
                    if pos is not None:
                        vec[pos] += c
                if any(vec):
                    relations.append(vec)
    size = len(monos)
    rel = as_int_matrix([[r[i] for r in relations] for i in range(size)], size, len(relations))
    dmat, u, _, uinv, _ = smith_decomposition(rel)
    diag = [int(dmat[i, i]) for i in range(min(dmat.shape))]
    rank = sum(1 for x in diag if x)
    if any(x > 1 for x in diag):
        raise TorsionFound(f"degree-{k} cohomology has torsion {[x for x in diag if x > 1]}")
    h = size - rank
    assert h == p.h_vector[k], f"rank {h} != h_{k} = {p.h_vector[k]}"
    q = u[rank:, :]

    chosen = _monomial_basis(q, h)
    if chosen is not None:
        b = as_int_matrix(q[:, chosen], h, h)
        binv = _inverse(b)
        proj = as_int_matrix(binv.dot(q), h, size) if h else q
        lifts = tuple(tuple(int(i == c) for i in range(size)) for c in chosen)
        monomial = True
    else:
        proj = q
        lifts = tuple(tuple(int(x) for x in uinv[:, rank + j]) for j in range(h))
        monomial = False
    return GradedBasis(p, k, tuple(monos), rel, as_int_matrix(proj, h, size), lifts, monomial)


def _monomial_basis(q, h) -> Optional[List[int]]:
    """Columns of ``q`` forming a unimodular h x h block, chosen greedily."""
    if h == 0:
        return []
    chosen = []
    for j in range(q.shape[1]):
        trial = chosen + [j]
        if rational_rank(q[:, trial].T) == len(trial):
            chosen = trial
            if len(chosen) == h:
                break
    if len(chosen) == h and abs(determinant(q[:, chosen])) == 1:
        return chosen
    return None


def _inverse(b):
    from .polytope import unimodular_inverse
    return unimodular_inverse(b)


def _multiply(p: DelzantPolytope, a: Dict[Monomial, int], b: Dict[Monomial, int]):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if is_face_monomial(p, m):
                out[m] = out.get(m, 0) + ca * cb
    return out


@dataclass(frozen=True, eq=False)
class GradedMap:
    """An integer matrix between graded pieces, in quotient-basis coordinates."""

    matrix: np.ndarray
    source: str
    target: str

    @property
    def rank(self) -> int:
        return rational_rank(self.matrix) if self.matrix.size else 0

    @property
    def shape(self):
        return self.matrix.shape


def multiply_by_class(p: DelzantPolytope, c: Sequence[int], k: int) -> GradedMap:
    """Cup product with a degree-2 class ``c`` (given in degree-1 coordinates)."""
    b1 = graded_basis(p, 1) if p.dim >= 1 else None
    src = graded_basis(p, k)
    rows = p.h_vector[k + 1] if k + 1 <= p.dim else 0
    if rows == 0 or src.rank == 0:
        return GradedMap(as_int_matrix([], rows, src.rank), f"H^{2 * k}", f"H^{2 * k + 2}")
    tgt = graded_basis(p, k + 1)
    cpoly = {}
    for j, cj in enumerate(c):
        for m, x in b1.lift_poly(j).items():
            cpoly[m] = cpoly.get(m, 0) + cj * x
    cols = [tgt.coords(_multiply(p, src.lift_poly(i), cpoly)) for i in range(src.rank)]
    # well defined: linear relations times any class vanish
    for r in b1.relation_vectors():
        rpoly = {m: x for m, x in zip(b1.monomials, r) if x}
        for i in range(src.rank):
            assert not any(tgt.coords(_multiply(p, src.lift_poly(i), rpoly))), \
                "cup product is not well defined"
    m = as_int_matrix([[col[r] for col in cols] for r in range(rows)], rows, src.rank)
    return GradedMap(m, f"H^{2 * k}", f"H^{2 * k + 2}")


def _check_fold_set(p: DelzantPolytope, folds) -> Tuple[int, ...]:
    folds = tuple(sorted(set(folds)))
    if not folds:
        raise EmptyFoldSet("fold set must be nonempty")
    for s in folds:
        if not 0 <= s < p.n_facets:
            raise InvalidFacet(f"facet index {s} out of range")
    for a, b in combinations(folds, 2):
        if p.intersects((a, b)):
            raise FoldFacetsIntersect(f"facets {a} and {b} intersect")
    return folds


@dataclass(frozen=True, eq=False)
class PhiTilde:
    """The map sum_s H^{2k-2}(B_s) -> H^{2k}(Y) induced by the divisors."""

    map: GradedMap
    blocks: Tuple[Tuple[int, GradedBasis], ...]
    target: GradedBasis

    @property
    def matrix(self):
        return self.map.matrix

    def source_labels(self) -> List[str]:
        out = []
        for s, basis in self.blocks:
            names = _parent_names(self.target.polytope, s)
            for i in range(basis.rank):
                out.append(f"x{s}*({basis.label(i, 'b', names)})")
        return out


def _parent_names(p, s):
    return p.facet_subpolytope(s).parent_facets


def phi_tilde(p: DelzantPolytope, folds, k: int) -> PhiTilde:
    folds = _check_fold_set(p, folds)
    if not 1 <= k <= p.dim:
        raise DegreeOutOfRange(f"degree {k} outside 1..{p.dim}")
    target = graded_basis(p, k)
    d = p.n_facets
    blocks, cols = [], []
    for s in folds:
        facet = p.facet_subpolytope(s)
        src = graded_basis(facet.polytope, k - 1)
        blocks.append((s, src))

        def push(poly):
            out = {}
            for m, c in poly.items():
                e = [0] * d
                e[s] = 1
                for t, x in enumerate(m):
                    e[facet.parent_facets[t]] += x
                out[tuple(e)] = out.get(tuple(e), 0) + c
            return out

        for i in range(src.rank):
            cols.append(target.coords(push(src.lift_poly(i))))
        for r in src.relation_vectors():
            rpoly = {m: x for m, x in zip(src.monomials, r) if x}
            assert not any(target.coords(push(rpoly))), "phi_tilde is not well defined"
    rows = target.rank
    m = as_int_matrix([[c[r] for c in cols] for r in range(rows)], rows, len(cols))
    return PhiTilde(GradedMap(m, f"H^{2 * k - 2}(B)", f"H^{2 * k}(Y)"), tuple(blocks), target)


@dataclass(frozen=True, eq=False)
class ComplementCohomology:
    """H^j(Y minus B; Z) for j = 0..2n, with kernel generators in odd degrees."""

    groups: Tuple[AbelianGroup, ...]
    kernel_generators: Dict[int, np.ndarray]
    prismatic: bool
    n_facets: int
    n_folds: int

    @property
    def betti(self) -> Tuple[int, ...]:
        return tuple(g.free_rank for g in self.groups)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** j * b for j, b in enumerate(self.betti))


def is_prismatic_complement(p: DelzantPolytope, folds) -> bool:
    """Whether the non-fold normals span a sublattice with quotient Z."""
    rest = [i for i in range(p.n_facets) if i not in set(folds)]
    n = p.dim
    q = cokernel_structure([[p.normals[i][k] for i in rest] for k in range(n)], n)
    return q.free_rank == 1 and not q.invariant_factors


def closed_form_betti(p: DelzantPolytope, folds) -> Dict[int, int]:
    """Betti numbers of the complement in degrees 0, 1, 2, 2n-1, 2n."""
    n, d, r = p.dim, p.n_facets, len(set(folds))
    if is_prismatic_complement(p, folds):
        return {0: 1, 1: 1, 2: d - n - 1, 2 * n - 1: 1, 2 * n: 0}
    return {0: 1, 1: 0, 2: d - n - r, 2 * n - 1: r - 1, 2 * n: 0}


def complement_euler(p: DelzantPolytope, folds) -> int:
    folds = _check_fold_set(p, folds)
    return len(p.vertices) - sum(len(p.facet_subpolytope(s).polytope.vertices) for s in folds)


@lru_cache(maxsize=1024)
def _complement_cohomology(p: DelzantPolytope, folds: Tuple[int, ...]) -> ComplementCohomology:
    n = p.dim
    groups = [AbelianGroup(1)]
    kernels = {}
    for k in range(1, n + 1):
        m = phi_tilde(p, folds, k).matrix
        ker = integer_kernel(m)
        kernels[2 * k - 1] = ker
        groups.append(AbelianGroup(ker.shape[1]))
        groups.append(cokernel_structure(m, m.shape[0]))
    result = ComplementCohomology(tuple(groups), kernels, is_prismatic_complement(p, folds),
                                  p.n_facets, len(folds))
    betti = result.betti
    for j, b in closed_form_betti(p, folds).items():
        assert betti[j] == b, f"b^{j} = {betti[j]} disagrees with closed form {b}"
    assert result.euler_characteristic == complement_euler(p, folds), \
        "Euler characteristic of the complement is not additive"
    return result


def complement_cohomology(p: DelzantPolytope, folds) -> ComplementCohomology:
    return _complement_cohomology(p, _check_fold_set(p, folds))


def toric_betti(p: DelzantPolytope) -> Tuple[int, ...]:
    """Betti numbers b^0..b^2n of the compact toric manifold of ``p``."""
    out = []
    for h in p.h_vector:
        out += [h, 0]
    return tuple(out[:-1])


@dataclass(frozen=True)
class FoldComponent:
    """A fold component Z_s: a circle bundle over the divisor B_s."""

    facet: int
    euler_class: Tuple[int, ...]
    betti: Tuple[int, ...]
    dim4_type: Optional[str]

    @property
    def euler_magnitude(self) -> Optional[int]:
        """gcd of the coordinates of e (that is |e| when H^2(B_s) has rank one)."""
        g = 0
        for x in self.euler_class:
            g = gcd(g, x)
        return g

    def to_dict(self):
        return {"facet": self.facet, "euler_class": list(self.euler_class),
                "betti": list(self.betti), "dim4_type": self.dim4_type}


def fold_euler_class(p: DelzantPolytope, s: int, v: Sequence[int] = None) -> Tuple[int, ...]:
    """Restriction of y_s to H^2(B_s), in the degree-1 basis of B_s.

    ``v`` is any integer vector with <v, u_s> = 1; the answer does not
    depend on it.
    """
    facet = p.facet_subpolytope(s)
    b = facet.polytope
    if b.dim == 0:
        return ()
    if v is None:
        v = solve_unit(p.normals[s])
    if sum(a * c for a, c in zip(v, p.normals[s])) != 1:
        raise ValueError("v must pair to 1 with the fold normal")
    poly = {}
    for t, j in enumerate(facet.parent_facets):
        c = -sum(a * x for a, x in zip(v, p.normals[j]))
        if c:
            m = tuple(int(i == t) for i in range(b.n_facets))
            poly[m] = c
    return tuple(graded_basis(b, 1).coords(poly))


def fold_component_invariants(p: DelzantPolytope, s: int) -> FoldComponent:
    if not isinstance(s, (int, np.integer)) or not 0 <= s < p.n_facets:
        raise NotAFoldContext(f"facet {s} is not a facet of the polytope")
    facet = p.facet_subpolytope(s)
    b = facet.polytope
    v = solve_unit(p.normals[s])
    e = fold_euler_class(p, s, v)
    basis = facet.basis
    for c in range(basis.shape[1]):
        w = [int(x) for x in basis[:, c]]
        alt = fold_euler_class(p, s, [x + y for x, y in zip(v, w)])
        assert alt == e, "Euler class depends on the choice of splitting vector"

    m = b.dim
    h = b.h_vector
    ranks = [multiply_by_class(b, e, i).rank if m >= 1 else 0 for i in range(m + 1)]
    betti = []
    for k in range(2 * m + 2):
        i, odd = divmod(k, 2)
        if odd:
            betti.append(h[i] - ranks[i])
        else:
            betti.append(h[i] - (ranks[i - 1] if i else 0))
    betti = tuple(betti)
    assert betti[0] == 1 and betti[-1] == 1, "circle bundle must be connected and closed"
    assert sum((-1) ** k * x for k, x in enumerate(betti)) == 0, "odd manifold with chi != 0"

    dim4 = None
    if p.dim == 2:
        q = abs(e[0])
        dim4 = "S1xS2" if q == 0 else "S3" if q == 1 else f"L({q};1)"
    return FoldComponent(s, e, betti, dim4)
