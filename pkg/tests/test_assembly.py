import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import prism, random_template, seeded
from toric_origami import corpus
from toric_origami.assembly import (CLOSED_FORM_DIM4, CONSTRAINT_SOLVED, KUNNETH_PRISMATIC,
                                    ORIENTATION_NOTE, UNDERDETERMINED, Relation, _solve,
                                    betti_dim4, betti_prismatic, mv_constraint_system,
                                    solve_betti)
from toric_origami.errors import HasBoundary, NotPrismatic, WrongDimension
from toric_origami.invariants import euler_characteristic
from toric_origami.polytope import build_polytope
from toric_origami.template import Edge, EdgeEnd, build_template, graph_stats

TRIANGLE = [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)]
SQUARE = [((-1, 0), 0), ((1, 0), 1), ((0, -1), 0), ((0, 1), 1)]


def cap_cycle(base):
    """Two prisms over ``base`` glued along both caps."""
    p = build_polytope(prism(base, 1))
    d = p.n_facets
    edges = [Edge("bottom", (EdgeEnd("A", d - 2), EdgeEnd("B", d - 2))),
             Edge("top", (EdgeEnd("A", d - 1), EdgeEnd("B", d - 1)))]
    return build_template(p.dim, {"A": p, "B": p}, edges)


def alternating(betti):
    return sum((-1) ** k * b for k, b in enumerate(betti))


@pytest.mark.parametrize("name, betti, method", [
    ("m1", (1, 1, 4, 1, 1), CLOSED_FORM_DIM4),
    ("m2", (1, 5, 8, 5, 1), CLOSED_FORM_DIM4),
    ("s2xt2", (1, 2, 2, 2, 1), CLOSED_FORM_DIM4),
    ("s3xs1", (1, 1, 0, 1, 1), CLOSED_FORM_DIM4),
    ("cp2", (1, 0, 1, 0, 1), CLOSED_FORM_DIM4),
    ("lens_3", (1, 1, 0, 1, 1), CLOSED_FORM_DIM4),
    ("segment", (1, 0, 1), CONSTRAINT_SOLVED),
    ("truncated_cube", (1, 0, 4, 0, 4, 0, 1), CONSTRAINT_SOLVED),
])
def test_corpus_betti(name, betti, method):
    report = solve_betti(corpus.load(name))
    assert report.betti == betti and report.method == method
    assert report.euler_characteristic == alternating(betti)


def test_lens_torsion_in_h2():
    assert str(solve_betti(corpus.load("lens_3")).torsion_H2) == "Z/3"


def test_s2xt2_prismatic_route_agrees():
    t = corpus.load("s2xt2")
    assert betti_prismatic(t).betti == betti_dim4(t).betti == (1, 2, 2, 2, 1)


@pytest.mark.parametrize("base, expected", [
    (TRIANGLE, (1, 2, 2, 2, 2, 2, 1)),
    (SQUARE, (1, 2, 3, 4, 3, 2, 1)),
])
def test_prismatic_kunneth(base, expected):
    t = cap_cycle(base)
    report = solve_betti(t)
    assert report.method == KUNNETH_PRISMATIC and report.betti == expected
    assert report.euler_characteristic == euler_characteristic(t) == 0
    # the independent constraints are all satisfied by the product answer
    system = mv_constraint_system(t)
    assert all(r.holds(expected) for r in system.relations + system.pd)
    assert all(expected[k] == v for k, v in system.fixed.items())


def test_double_truncated_cube_underdetermined():
    t = corpus.load("double_truncated_cube")
    report = solve_betti(t)
    assert report.method == UNDERDETERMINED and not report.determined
    assert report.betti[:2] == (1, 1) and report.betti[-2:] == (1, 1)
    assert report.betti[2:5] == (None, None, None)
    assert sorted(str(r) for r in report.constraints) == ["b2 - b3 + b4 = 6", "b2 = b4"]
    assert report.euler_characteristic == 6
    # b2 = b4 = 2, b3 = 1 violates the alternating-sum relation
    claimed = (1, 1, 2, 1, 2, 1, 1)
    assert not all(r.holds(claimed) for r in report.constraints)


def test_relation_rendering():
    assert str(Relation.make({2: 1, 4: -1}, 0)) == "b2 = b4"
    assert str(Relation.make({2: 1, 3: -1, 4: 1}, 6)) == "b2 - b3 + b4 = 6"
    assert str(Relation.make({3: -2}, 4)) == "-2*b3 = 4"
    assert Relation.make({}, 0).trivial


def test_errors():
    with pytest.raises(WrongDimension):
        betti_dim4(corpus.load("truncated_cube"))
    with pytest.raises(NotPrismatic):
        betti_prismatic(corpus.load("cp2"))
    sq = build_polytope(SQUARE)
    open_t = build_template(2, {"A": sq, "B": sq},
                            [Edge("e", (EdgeEnd("A", 0), EdgeEnd("B", 0))),
                             Edge("d", (EdgeEnd("A", 1),))])
    with pytest.raises(HasBoundary):
        solve_betti(open_t)


def test_non_bipartite_note():
    # three hexagons glued in a triangle on the facets 0, 2, 4
    hexagon = build_polytope([((1, 0), 1), ((1, 1), 1), ((0, 1), 1), ((-1, 0), 1),
                              ((-1, -1), 1), ((0, -1), 1)])
    edges = [Edge("ab", (EdgeEnd("A", 0), EdgeEnd("B", 0))),
             Edge("bc", (EdgeEnd("B", 2), EdgeEnd("C", 2))),
             Edge("ca", (EdgeEnd("C", 4), EdgeEnd("A", 4)))]
    t = build_template(2, {"A": hexagon, "B": hexagon, "C": hexagon}, edges)
    assert not graph_stats(t).bipartite
    report = solve_betti(t)
    assert ORIENTATION_NOTE in report.notes
    assert report.euler_characteristic == euler_characteristic(t)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dim4_closed_form_matches_mv(seed):
    rng = seeded(seed)
    t = random_template(rng, 2)
    report = betti_dim4(t)
    assert report.euler_characteristic == alternating(report.betti) == euler_characteristic(t)
    system = mv_constraint_system(t)
    assert all(report.betti[k] == v for k, v in system.fixed.items())
    if graph_stats(t).bipartite:
        assert all(r.holds(report.betti) for r in system.relations + system.pd)
        solved = _solve(system)
        if solved is not None:
            assert tuple(int(solved.get(k, system.fixed.get(k))) for k in range(5)) == \
                report.betti


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_euler_additivity(seed):
    rng = seeded(seed)
    n = rng.choice((2, 3))
    t = random_template(rng, n, max_vertices=4)
    report = solve_betti(t)
    chi = euler_characteristic(t)
    assert report.euler_characteristic == chi
    if report.determined:
        assert alternating(report.betti) == chi
        assert report.betti == report.betti[::-1] or not graph_stats(t).bipartite
    else:
        assert report.constraints
