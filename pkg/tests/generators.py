"""Random Delzant polytopes, fold sets and origami templates for tests.

Polytopes come from a few base shapes (simplex, cube, lens polygons,
trapezoids, prisms) followed by random vertex cuts and a random affine
unimodular change of coordinates.  Templates glue superimposed copies of
one polytope along a fixed set of pairwise-disjoint facets; copies differ
by small corner cuts away from those facets.
"""
import random
from fractions import Fraction
from itertools import combinations

from toric_origami.errors import InvalidTemplate, PolytopeError
from toric_origami.polytope import build_polytope, transform_halfspaces
from toric_origami.template import Edge, EdgeEnd, build_template


def random_unimodular(rng, n, steps=None):
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 1:
        return [[rng.choice((1, -1))]]
    for _ in range(steps if steps is not None else rng.randint(0, 4)):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        for k in range(n):
            a[i][k] += c * a[j][k]
    if rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        a[i], a[j] = a[j], a[i]
    return a


def cube(n, size):
    hs = []
    for i in range(n):
        e = [0] * n
        e[i] = -1
        hs.append((tuple(e), 0))
        e = [0] * n
        e[i] = 1
        hs.append((tuple(e), size))
    return hs


def simplex(n, size):
    hs = []
    for i in range(n):
        e = [0] * n
        e[i] = -1
        hs.append((tuple(e), 0))
    hs.append((tuple([1] * n), size))
    return hs


def lens_polygon(k, height=None):
    """Quadrilateral whose two vertical sides are disjoint; N/<others> = Z/k."""
    h = k + 1 if height is None else height
    return [((-1, 0), 0), ((1, 0), 1), ((0, 1), h), ((k, -1), 0)]


def trapezoid(a, size):
    """Hirzebruch trapezoid: the facets (1,0), (-1,a) are disjoint, parallel-free caps."""
    return [((0, -1), 0), ((-1, 0), 0), ((0, 1), size), ((1, a), size * (1 + abs(a)) + size)]


def prism(base, length):
    """base x [0, length]; the last two facets are the caps."""
    hs = [(tuple(u) + (0,), c) for u, c in base]
    n = len(base[0][0]) + 1
    bottom = tuple([0] * (n - 1) + [-1])
    top = tuple([0] * (n - 1) + [1])
    return hs + [(bottom, 0), (top, length)]


def cut_vertex(p, vertex_index, depth):
    """Half-spaces of p with vertex ``vertex_index`` cut off at lattice depth ``depth``."""
    v = p.vertices[vertex_index]
    facets = sorted(p.vertex_facets[vertex_index])
    w = tuple(sum(p.normals[i][k] for i in facets) for k in range(p.dim))
    c = sum(Fraction(a) * b for a, b in zip(w, v)) - depth
    return list(p.halfspaces) + [(w, c)]


def random_cuts(rng, halfspaces, cuts, avoid=(), depth=(1, 2)):
    """Apply up to ``cuts`` random vertex cuts, never at vertices on ``avoid`` facets."""
    p = build_polytope(halfspaces)
    for _ in range(cuts):
        choices = [i for i, fs in enumerate(p.vertex_facets) if not fs & set(avoid)]
        if not choices:
            break
        i = rng.choice(choices)
        try:
            p = build_polytope(cut_vertex(p, i, rng.randint(*depth)))
        except PolytopeError:
            continue
    return p


def random_transform(rng, halfspaces, n):
    a = random_unimodular(rng, n)
    t = [rng.randint(-3, 3) for _ in range(n)]
    return transform_halfspaces(halfspaces, a, t)


def base_shape(rng, n):
    """(half-spaces, a prismatic fold pair or None)."""
    if n == 1:
        return [((-1,), 0), ((1,), rng.randint(1, 4))], (0, 1)
    if n == 2:
        kind = rng.choice(("simplex", "cube", "lens", "trapezoid"))
        if kind == "simplex":
            return simplex(2, rng.randint(3, 6)), None
        if kind == "cube":
            return cube(2, rng.randint(3, 6)), (0, 1)
        if kind == "lens":
            k = rng.randint(1, 4)
            return lens_polygon(k, k + rng.randint(2, 4)), (0, 1)
        a = rng.randint(-3, 3)
        return trapezoid(a, rng.randint(3, 5)), (1, 3)
    kind = rng.choice(("simplex", "cube", "prism", "prism"))
    if kind == "simplex":
        return simplex(n, rng.randint(4, 6)), None
    if kind == "cube":
        return cube(n, rng.randint(4, 6)), (2 * n - 2, 2 * n - 1)
    base, _ = base_shape(rng, n - 1)
    hs = prism(base, rng.randint(2, 5))
    return hs, (len(hs) - 2, len(hs) - 1)


def random_polytope(rng, n, cuts=None):
    hs, _ = base_shape(rng, n)
    p = random_cuts(rng, hs, rng.randint(0, 4) if cuts is None else cuts)
    return build_polytope(random_transform(rng, p.halfspaces, n))


def random_disjoint_facets(rng, p, size=None):
    """A random nonempty set of pairwise-disjoint facets."""
    order = list(range(p.n_facets))
    rng.shuffle(order)
    chosen = []
    for s in order:
        if all(not p.intersects((s, t)) for t in chosen):
            chosen.append(s)
            if size is not None and len(chosen) == size:
                break
    return sorted(chosen)


def random_fold_pair(rng, n):
    """(polytope, fold set), with prismatic complements mixed in."""
    hs, pair = base_shape(rng, n)
    if pair is not None and rng.random() < 0.35:
        # cuts away from the caps keep the complement prismatic only if the
        # caps stay the sole extra facets; so cut nothing here
        p = build_polytope(random_transform(rng, hs, n))
        return p, list(pair)
    p = random_cuts(rng, hs, rng.randint(0, 3))
    p = build_polytope(random_transform(rng, p.halfspaces, n))
    return p, random_disjoint_facets(rng, p, size=rng.choice((None, 1, 2)))


def random_template(rng, n, max_vertices=6, extra_edges=None, dangling=False,
                    acyclic=None, retries=50):
    """A random valid origami template of dimension 2n."""
    for _ in range(retries):
        t = _try_template(rng, n, max_vertices, extra_edges, dangling, acyclic)
        if t is not None:
            return t
    raise RuntimeError("could not build a random template")


def _try_template(rng, n, max_vertices, extra_edges, dangling, acyclic):
    hs, pair = base_shape(rng, n)
    if n > 1 and rng.random() < 0.5:
        hs = random_cuts(rng, hs, rng.randint(0, 2)).halfspaces
    base = build_polytope(hs)
    if pair is not None and rng.random() < 0.5:
        labels = list(pair)
    else:
        labels = random_disjoint_facets(rng, base)
    count = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(count)]
    a = random_unimodular(rng, n)
    shift = [rng.randint(-2, 2) for _ in range(n)]
    polytopes = {}
    for name in names:
        p = base
        if n > 1 and rng.random() < 0.4:
            p = random_cuts(rng, p.halfspaces, rng.randint(1, 2), avoid=labels, depth=(1, 1))
        polytopes[name] = build_polytope(transform_halfspaces(p.halfspaces, a, shift))
    free = {name: set(labels) for name in names}
    edges = []

    def add(u, w, s):
        edges.append(Edge(f"e{len(edges)}", (EdgeEnd(u, s), EdgeEnd(w, s))))
        free[u].discard(s)
        free[w].discard(s)

    for i in range(1, count):
        options = [(names[j], s) for j in range(i) for s in free[names[j]]]
        if not options:
            return None
        w, s = rng.choice(options)
        add(names[i], w, s)
    if acyclic is not True:
        extra = rng.randint(0, count) if extra_edges is None else extra_edges
        for _ in range(extra):
            options = [(u, w, s) for u, w in combinations(names, 2)
                       for s in free[u] & free[w]]
            if not options:
                break
            add(*rng.choice(options))
        if acyclic is False and len(edges) < count:
            return None
    if dangling:
        options = [(u, s) for u in names for s in free[u]]
        for u, s in rng.sample(options, min(len(options), rng.randint(1, 2))):
            edges.append(Edge(f"d{len(edges)}", (EdgeEnd(u, s),)))
    try:
        return build_template(n, polytopes, edges)
    except InvalidTemplate:
        return None


def seeded(seed):
    return random.Random(seed)
