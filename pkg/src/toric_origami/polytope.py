"""Delzant polytopes in half-space form, with exact rational vertex data."""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, gcd
from typing import Dict, FrozenSet, Sequence, Tuple

import numpy as np

from .errors import (Empty, InvalidFacet, NonPrimitiveNormal, NotFullDimensional,
                     NotSimple, NotSmooth, PolytopeError, RedundantHalfspace, Unbounded)
from .lattice import (as_int_matrix, determinant, hermite_normal_form, integer_kernel,
                      rational_rank, solve_rational)

Vector = Tuple[int, ...]
Point = Tuple[Fraction, ...]
Halfspace = Tuple[Vector, Fraction]


def to_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("offsets must be exact (int, Fraction or 'p/q' string)")
    return Fraction(x)


def _int_det(rows) -> int:
    """Determinant of a small square integer matrix (Bareiss, plain lists)."""
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def _enumerate_vertices(normals, offsets, n) -> Dict[Point, FrozenSet[int]]:
    """Brute-force vertex enumeration over all n-subsets of facets.

    Works in integers: offsets are scaled by a common denominator and each
    candidate point is found by Cramer's rule.
    """
    den = 1
    for c in offsets:
        den = den * c.denominator // gcd(den, c.denominator)
    cs = [int(c * den) for c in offsets]
    found = {}
    d = len(normals)
    for subset in combinations(range(d), n):
        rows = [tuple(normals[i]) for i in subset]
        det = _int_det(rows)
        if det == 0:
            continue
        num = []
        for col in range(n):
            num.append(_int_det([r[:col] + (cs[i],) + r[col + 1:]
                                 for r, i in zip(rows, subset)]))
        if det < 0:
            det, num = -det, [-x for x in num]
        # the point is num / (det * den)
        tight = []
        ok = True
        for i in range(d):
            val = sum(u * x for u, x in zip(normals[i], num))
            bound = cs[i] * det
            if val > bound:
                ok = False
                break
            if val == bound:
                tight.append(i)
        if ok:
            point = tuple(Fraction(x, det * den) for x in num)
            found.setdefault(point, frozenset(tight))
    return found


def _affine_rank(points) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(a) - b for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    # clear denominators row by row, then take the integer rank
    rows = []
    for r in diffs:
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in r])
    return rational_rank(rows)


def _check_bounded_nonempty(normals, offsets, n):
    """Raise Empty/Unbounded as appropriate; return the vertex map."""
    rank = rational_rank(normals)
    if rank < n:
        # recession cone contains a line; the polyhedron is unbounded unless
        # empty.  Decide emptiness on the row space of the normals.
        basis, _ = hermite_normal_form(normals)
        basis = [list(basis[i]) for i in range(rank)]
        reduced = [[sum(u[k] * b[k] for k in range(n)) for b in basis] for u in normals]
        if _enumerate_vertices(reduced, offsets, rank) if rank else all(c >= 0 for c in offsets):
            raise Unbounded("normals do not span R^n")
        raise Empty("half-spaces have empty intersection")
    vertices = _enumerate_vertices(normals, offsets, n)
    if not vertices:
        raise Empty("half-spaces have empty intersection")
    for subset in combinations(range(len(normals)), n - 1):
        m = np.empty((len(subset), n), dtype=object)
        for r, i in enumerate(subset):
            m[r] = normals[i]
        k = integer_kernel(m)
        if k.shape[1] != 1:
            continue
        w = [int(x) for x in k[:, 0]]
        for sign in (1, -1):
            if all(sign * sum(a * b for a, b in zip(u, w)) <= 0 for u in normals):
                raise Unbounded(f"unbounded in direction {tuple(sign * x for x in w)}")
    return vertices


class DelzantPolytope:
    """A simple, rational, smooth polytope ``{x : <u_i, x> <= c_i}``.

    Build instances with :func:`build_polytope`, which validates the input;
    all derived data (vertices, incidences, face lattice) is computed eagerly.
    """

    def __init__(self, normals, offsets, vertices: Dict[Point, FrozenSet[int]], dim):
        self.dim = dim
        self.normals: Tuple[Vector, ...] = tuple(tuple(u) for u in normals)
        self.offsets: Tuple[Fraction, ...] = tuple(offsets)
        order = sorted(vertices)
        self.vertices: Tuple[Point, ...] = tuple(order)
        self.vertex_facets: Tuple[FrozenSet[int], ...] = tuple(vertices[v] for v in order)
        self._facet_cache = {}

    @classmethod
    def point(cls) -> "DelzantPolytope":
        """The 0-dimensional polytope (a facet of a segment)."""
        return cls((), (), {(): frozenset()}, 0)

    @property
    def n_facets(self) -> int:
        return len(self.normals)

    @property
    def halfspaces(self) -> Tuple[Halfspace, ...]:
        return tuple(zip(self.normals, self.offsets))

    def facet_vertices(self, s: int) -> Tuple[int, ...]:
        return tuple(i for i, fs in enumerate(self.vertex_facets) if s in fs)

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        adj = [set() for _ in range(self.n_facets)]
        for fs in self.vertex_facets:
            for i in fs:
                adj[i] |= fs - {i}
        return tuple(frozenset(a) for a in adj)

    def intersects(self, facets) -> bool:
        """Whether the facets with the given indices have a common point."""
        facets = set(facets)
        return any(facets <= fs for fs in self.vertex_facets)

    @cached_property
    def faces(self) -> FrozenSet[FrozenSet[int]]:
        out = set()
        for fs in self.vertex_facets:
            for k in range(len(fs) + 1):
                out.update(frozenset(c) for c in combinations(sorted(fs), k))
        return frozenset(out)

    @cached_property
    def f_vector(self) -> Tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for face in self.faces:
            counts[self.dim - len(face)] += 1
        return tuple(counts[:self.dim])

    @cached_property
    def h_vector(self) -> Tuple[int, ...]:
        # sum_k f_k (t-1)^k = sum_k h_k t^k, with f_n = 1
        n = self.dim
        f = list(self.f_vector) + [1]
        h = [0] * (n + 1)
        for k, fk in enumerate(f):
            for j in range(k + 1):
                h[j] += fk * comb(k, j) * (-1) ** (k - j)
        return tuple(h)

    def face_data(self):
        """(faces, f_vector, h_vector), with the Dehn-Sommerville checks."""
        h = self.h_vector
        assert sum(h) == len(self.vertices), "sum of h-vector must equal the vertex count"
        assert h == h[::-1], "h-vector must be palindromic"
        return self.faces, self.f_vector, h

    def _check_facet(self, s):
        if not isinstance(s, (int, np.integer)) or not 0 <= s < self.n_facets:
            raise InvalidFacet(f"facet index {s} out of range 0..{self.n_facets - 1}")

    def local_fan_at_facet(self, s: int) -> FrozenSet[Halfspace]:
        """Half-spaces of facet ``s`` and of every facet meeting it."""
        self._check_facet(s)
        return frozenset(self.halfspaces[i] for i in self.adjacency[s] | {s})

    def facet_subpolytope(self, s: int) -> "Facet":
        self._check_facet(s)
        if s not in self._facet_cache:
            self._facet_cache[s] = _facet_subpolytope(self, s)
        return self._facet_cache[s]

    def transformed(self, a, t=None) -> "DelzantPolytope":
        """Image under ``x -> a x + t`` for unimodular ``a`` and integer ``t``."""
        return build_polytope(transform_halfspaces(self.halfspaces, a, t))

    def __eq__(self, other):
        # facet order matters: indices are part of the data
        return (isinstance(other, DelzantPolytope) and self.dim == other.dim
                and self.halfspaces == other.halfspaces)

    def __hash__(self):
        return hash((self.dim, self.halfspaces))

    def __repr__(self):
        return (f"DelzantPolytope(dim={self.dim}, facets={self.n_facets}, "
                f"vertices={len(self.vertices)})")


@dataclass(frozen=True)
class Facet:
    """A facet re-expressed as a Delzant polytope in its own lattice.

    ``parent_facets[j]`` is the facet of the ambient polytope whose
    intersection with the facet is facet ``j`` of ``polytope``; ``basis``
    (columns) spans the induced lattice and ``origin`` is the chosen vertex.
    """

    polytope: DelzantPolytope
    parent_facets: Tuple[int, ...]
    basis: np.ndarray
    origin: Point


def _facet_subpolytope(p: DelzantPolytope, s: int) -> Facet:
    n = p.dim
    u = p.normals[s]
    basis = integer_kernel([list(u)])
    origin = p.vertices[p.facet_vertices(s)[0]]
    parents = tuple(sorted(p.adjacency[s]))
    if n == 1:
        return Facet(DelzantPolytope.point(), (), basis, origin)
    halfspaces = []
    for j in parents:
        uj = p.normals[j]
        normal = tuple(int(sum(uj[k] * basis[k, c] for k in range(n))) for c in range(n - 1))
        offset = p.offsets[j] - sum(a * b for a, b in zip(uj, origin))
        halfspaces.append((normal, offset))
    return Facet(build_polytope(halfspaces), parents, basis, origin)


def transform_halfspaces(halfspaces, a, t=None):
    """Half-spaces of the image of ``{<u,x> <= c}`` under ``x -> a x + t``."""
    a = as_int_matrix(a)
    n = a.shape[0]
    if abs(determinant(a)) != 1:
        raise ValueError("transformation must be unimodular")
    t = [0] * n if t is None else [Fraction(x) for x in t]
    # x = a^-1 (y - t): <u, x> = <a^-T u, y - t>
    inv = unimodular_inverse(a)
    out = []
    for u, c in halfspaces:
        v = tuple(int(sum(inv[k, i] * u[k] for k in range(n))) for i in range(n))
        out.append((v, Fraction(c) + sum(vi * ti for vi, ti in zip(v, t))))
    return out


def unimodular_inverse(a) -> np.ndarray:
    a = as_int_matrix(a)
    n = a.shape[0]
    rows = [list(a[i]) for i in range(n)]
    cols = [solve_rational(rows, [int(i == j) for i in range(n)]) for j in range(n)]
    return as_int_matrix([[cols[j][i] for j in range(n)] for i in range(n)], n, n)


def build_polytope(halfspaces: Sequence) -> DelzantPolytope:
    """Validate half-spaces ``(normal, offset)`` and build the polytope.

    Raises NonPrimitiveNormal, RedundantHalfspace, Empty, Unbounded,
    NotFullDimensional, NotSimple or NotSmooth.
    """
    halfspaces = list(halfspaces)
    if not halfspaces:
        raise PolytopeError("no half-spaces given")
    normals = [tuple(int(x) for x in u) for u, _ in halfspaces]
    offsets = [to_fraction(c) for _, c in halfspaces]
    n = len(normals[0])
    if n < 1 or any(len(u) != n for u in normals):
        raise PolytopeError("normals must all have the same length n >= 1")
    if len(normals) < n + 1:
        raise PolytopeError(f"need at least {n + 1} half-spaces in dimension {n}")
    for i, u in enumerate(normals):
        g = 0
        for x in u:
            g = gcd(g, x)
        if g != 1:
            raise NonPrimitiveNormal(i)
    seen = set()
    for i, hs in enumerate(zip(normals, offsets)):
        if hs in seen:
            raise RedundantHalfspace(i)
        seen.add(hs)

    vertices = _check_bounded_nonempty(normals, offsets, n)
    if _affine_rank(list(vertices)) < n:
        raise NotFullDimensional("polytope has empty interior")
    for i in range(len(normals)):
        on = [v for v, fs in vertices.items() if i in fs]
        if _affine_rank(on) < n - 1:
            raise RedundantHalfspace(i)
    for v in sorted(vertices):
        fs = vertices[v]
        if len(fs) != n:
            raise NotSimple(v, len(fs))
    for v in sorted(vertices):
        det = determinant([normals[i] for i in sorted(vertices[v])])
        if abs(det) != 1:
            raise NotSmooth(v, det)
    return DelzantPolytope(normals, offsets, vertices, n)
