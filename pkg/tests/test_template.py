import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import random_template, random_unimodular, seeded
from oracles import cycle_rank_brute, is_bipartite_brute
from toric_origami import corpus
from toric_origami.errors import InvalidTemplate, PolytopeError
from toric_origami.polytope import build_polytope
from toric_origami.template import (Edge, EdgeEnd, build_template, check_template,
                                    graph_stats, orbit_space_summary, validate_template)

SQUARE = [((-1, 0), 0), ((1, 0), 1), ((0, -1), 0), ((0, 1), 1)]
TRIANGLE = [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)]


def raw(polys, edges, n=2):
    return {"dimension": n,
            "polytopes": [{"id": k, "normals": [list(u) for u, _ in hs],
                           "offsets": [c for _, c in hs]} for k, hs in polys.items()],
            "edges": [{"id": eid, "ends": [{"polytope": v, "facet": f} for v, f in ends]}
                      for eid, ends in edges.items()]}


def kinds(exc_info):
    return [i.kind for i in exc_info.value.report.issues]


def test_s2xt2_template_valid():
    t = validate_template(raw({"A": SQUARE, "B": SQUARE},
                              {"e0": [("A", 0), ("B", 0)], "e1": [("A", 1), ("B", 1)]}))
    s = graph_stats(t)
    assert (s.L, s.R, s.cycle_rank, s.bipartite, s.acyclic) == (2, 2, 1, True, False)
    o = orbit_space_summary(t)
    assert len(o.facet_classes) == 2
    assert sorted(c.normal for c in o.facet_classes) == [(0, -1), (0, 1)]
    assert o.fixed_point_count == 0


def test_single_triangle():
    t = validate_template(raw({"Y": TRIANGLE}, {}))
    o = orbit_space_summary(t)
    assert len(o.facet_classes) == 3 and o.fixed_point_count == 3
    assert graph_stats(t).acyclic


def test_local_disagreement():
    other = [((1, 0), 0), ((-1, 0), 1), ((0, -1), 0), ((0, 1), 2)]
    with pytest.raises(InvalidTemplate) as info:
        validate_template(raw({"A": SQUARE, "B": other}, {"e0": [("A", 0), ("B", 0)]}))
    assert kinds(info) == ["LocalDisagreement"]


def test_local_disagreement_same_side():
    taller = [((-1, 0), 0), ((1, 0), 1), ((0, -1), 0), ((0, 1), 2)]
    with pytest.raises(InvalidTemplate) as info:
        validate_template(raw({"A": SQUARE, "B": taller}, {"e0": [("A", 0), ("B", 0)]}))
    assert kinds(info) == ["LocalDisagreement"]


def test_facet_mismatch():
    with pytest.raises(InvalidTemplate) as info:
        validate_template(raw({"A": SQUARE, "B": SQUARE}, {"e0": [("A", 0), ("B", 1)]}))
    assert kinds(info) == ["FacetMismatch"]


def test_fold_facets_intersect():
    with pytest.raises(InvalidTemplate) as info:
        validate_template(raw({"A": SQUARE, "B": SQUARE, "C": SQUARE},
                              {"e0": [("A", 0), ("B", 0)], "e1": [("A", 2), ("C", 2)]}))
    assert kinds(info) == ["FoldFacetsIntersect"]


def test_dangling_edges_count_for_disjointness():
    with pytest.raises(InvalidTemplate) as info:
        validate_template(raw({"A": SQUARE, "B": SQUARE},
                              {"e0": [("A", 0), ("B", 0)], "d": [("A", 2)]}))
    assert "FoldFacetsIntersect" in kinds(info)


def test_loop_edge_rejected():
    with pytest.raises(InvalidTemplate) as info:
        validate_template(raw({"A": SQUARE}, {"e0": [("A", 0), ("A", 1)]}))
    assert kinds(info) == ["LoopEdge"]


def test_facet_reused():
    with pytest.raises(InvalidTemplate) as info:
        validate_template(raw({"A": SQUARE, "B": SQUARE, "C": SQUARE},
                              {"e0": [("A", 0), ("B", 0)], "e1": [("A", 0), ("C", 0)]}))
    assert "FacetReused" in kinds(info)


def test_disconnected():
    with pytest.raises(InvalidTemplate) as info:
        validate_template(raw({"A": SQUARE, "B": SQUARE}, {}))
    assert kinds(info) == ["Disconnected"]


def test_invalid_polytope_reported():
    with pytest.raises(InvalidTemplate) as info:
        validate_template(raw({"A": [((-1, 0), 0), ((0, -1), 0), ((2, 1), 2)]}, {}))
    assert kinds(info) == ["InvalidPolytope"]


def test_dangling_edges_excluded_from_gluing():
    t = validate_template(raw({"A": SQUARE, "B": SQUARE},
                              {"e0": [("A", 0), ("B", 0)], "d": [("B", 1)]}))
    assert t.R == 1 and len(t.dangling_edges) == 1
    o = orbit_space_summary(t)
    # the dangling facet is neither a fold nor a facet of X
    assert len(o.facet_classes) == 3
    # only A's two corners on x = 1 are off every edge facet
    assert o.fixed_point_count == 2


def test_tree_stats():
    t = validate_template(raw({"A": SQUARE, "B": SQUARE, "C": SQUARE},
                              {"e0": [("A", 0), ("B", 0)], "e1": [("B", 1), ("C", 1)]}))
    s = graph_stats(t)
    assert (s.cycle_rank, s.acyclic, s.bipartite) == (0, True, True)


def test_m2_stats():
    s = graph_stats(corpus.load("m2"))
    assert (s.L, s.R, s.cycle_rank) == (8, 12, 5)


def test_double_truncated_cube_fixed_points():
    assert orbit_space_summary(corpus.load("double_truncated_cube")).fixed_point_count == 6


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_template_properties(seed):
    rng = seeded(seed)
    t = random_template(rng, rng.choice((1, 2, 3)), dangling=rng.random() < 0.2)
    s = graph_stats(t)
    edges = [(e.ends[0].vertex, e.ends[1].vertex) for e in t.ordinary_edges]
    assert s.cycle_rank == cycle_rank_brute(t.vertices, edges) >= 0
    if t.L <= 8:
        assert s.bipartite == is_bipartite_brute(t.vertices, edges)
    # no polytope vertex lies on two edge facets
    for v, p in t.polytopes.items():
        taken = set(t.edge_facets(v))
        assert all(len(fs & taken) <= 1 for fs in p.vertex_facets)
    o = orbit_space_summary(t)
    expected = 0
    for v, p in t.polytopes.items():
        expected += len(p.vertices) - sum(len(p.facet_vertices(s)) for s in t.edge_facets(v))
    assert o.fixed_point_count == expected
    for c in o.facet_classes:
        for v, i in c.members:
            assert t.polytopes[v].halfspaces[i] == (c.normal, c.offset)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_validation_invariant_under_common_lattice_map(seed):
    rng = seeded(seed)
    n = rng.choice((2, 3))
    t = random_template(rng, n)
    a = random_unimodular(rng, n)
    shift = [rng.randint(-3, 3) for _ in range(n)]
    moved = {v: p.transformed(a, shift) for v, p in t.polytopes.items()}
    assert check_template(n, moved, t.edges).ok
    # a broken copy stays broken, with the same issues, after the same map
    if not t.ordinary_edges:
        return
    end = t.ordinary_edges[0].ends[0]
    hs = list(t.polytopes[end.vertex].halfspaces)
    normal, offset = hs[end.facet]
    hs[end.facet] = (normal, offset + 1)
    try:
        shifted = build_polytope(hs)
    except PolytopeError:
        return
    broken = dict(t.polytopes)
    broken[end.vertex] = shifted
    before = check_template(n, broken, t.edges)
    after = check_template(n, {k: q.transformed(a, shift) for k, q in broken.items()}, t.edges)
    assert not before.ok
    assert [i.kind for i in before.issues] == [i.kind for i in after.issues]


def test_build_template_direct():
    sq = build_polytope(SQUARE)
    t = build_template(2, {"A": sq, "B": sq},
                       [Edge("e", (EdgeEnd("A", 0), EdgeEnd("B", 0)))])
    assert t.L == 2 and t.R == 1 and t.fold_facets("A") == (0,)
