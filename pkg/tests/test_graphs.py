import pickle
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkmcalc.builtins import fig1_graph, fig2_complex, triangle_edges_complex
from gkmcalc.errors import (DanglingEndpoint, Disconnected, DuplicateEdge, GraphError,
                            IntersectionNotMember, IntersectionNotRegular, NoFiltration,
                            NonRegular, SelfLoop)
from gkmcalc.graphs import (OrientedEdge, build_graph, build_regular_graph, check_filtration,
                            filter_complex, filter_regular, intersect, validate_complex)


def complete(name, vs):
    return build_regular_graph(name, list(vs), list(combinations(vs, 2)))


def test_regular_graph_examples():
    assert complete("K4", ["v0", "v1", "v2", "v3"]).degree == 3
    assert build_regular_graph("e", ["v0", "v1"], [("v0", "v1")]).degree == 1
    with pytest.raises(NonRegular) as exc:
        build_regular_graph("p", ["v0", "v1", "v2"], [("v0", "v1"), ("v1", "v2")])
    assert (exc.value.vertex, exc.value.degree, exc.value.expected) == ("v1", 2, 1)


@pytest.mark.parametrize("edges,err", [
    ([("v0", "v9")], DanglingEndpoint),
    ([("v0", "v0")], SelfLoop),
    ([("v0", "v1"), ("v1", "v0")], DuplicateEdge),
])
def test_malformed_graphs(edges, err):
    with pytest.raises(err):
        build_graph("bad", ["v0", "v1"], edges)


def test_oriented_edges():
    e = OrientedEdge("v0", "v1")
    assert e is OrientedEdge.parse("v0->v1")
    assert e.reversed().label == "v1->v0"
    assert e.undirected == ("v0", "v1")
    assert pickle.loads(pickle.dumps(e)) == e


def test_intersections():
    t1 = complete("O1", ["v0", "v1", "v2"])
    t2 = complete("O2", ["v0", "v1", "v3"])
    meet = intersect(t1, t2)
    assert set(meet.vertices) == {"v0", "v1"} and meet.edges == {("v0", "v1")}
    assert intersect(t1, complete("far", ["w0", "w1"])).is_empty()
    assert intersect(t1, t1).same_as(t1)


def test_validate_complex_examples():
    t1 = complete("O1", ["v0", "v1", "v2"])
    t2 = complete("O2", ["v0", "v1", "v3"])
    shared = complete("O3", ["v0", "v1"])
    assert len(validate_complex([t1, t2, shared]).members) == 3
    with pytest.raises(IntersectionNotMember):
        validate_complex([t1, t2])
    assert validate_complex([t1]).members == (t1,)
    # a path meet is not regular
    sq = build_regular_graph("sq", ["a", "b", "c", "d"],
                             [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    tri = complete("tri", ["a", "b", "c"])
    with pytest.raises(IntersectionNotRegular):
        validate_complex([sq, tri])


def test_fig1_filtration():
    g = fig1_graph()
    f = filter_regular(g, "b0")
    assert f.ordering == ("b0", "b1", "b2", "b3", "b4", "b5")
    assert f.degrees == (0, 1, 2, 2, 3, 4)
    assert sum(f.degrees) == len(g.edges) == 12
    assert check_filtration(f, g) == []


def test_fig2_filtration():
    c = fig2_complex()
    f = filter_complex(c, "b0")
    assert f.ordering == ("b0", "b1", "b2", "b3", "b4")
    assert f.degrees == (0, 1, 1, 2, 2)
    assert f.members[3] == "triangle" and f.members[4] == "rectangle"
    assert check_filtration(f, c.union_graph()) == []


def test_triangle_edges_has_no_filtration():
    with pytest.raises(NoFiltration) as exc:
        filter_complex(triangle_edges_complex(), "v0")
    assert exc.value.stuck_state.ordering == ("v0", "v1")


def test_small_filtrations():
    e = build_regular_graph("e", ["v0", "v1"], [("v0", "v1")])
    f = filter_regular(e, "v0")
    assert f.ordering == ("v0", "v1") and f.strata[1] == {("v0", "v1")}
    assert f.strata[0] == frozenset()
    k3 = complete("K3", ["v0", "v1", "v2"])
    for seed in k3.vertices:
        assert filter_regular(k3, seed).degrees == (0, 1, 2)


def test_disconnected():
    g = build_regular_graph("two", ["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
    with pytest.raises(Disconnected):
        filter_regular(g, "a")
    with pytest.raises(GraphError):
        filter_regular(g, "zz")


@st.composite
def circulants(draw):
    n = draw(st.integers(3, 11))
    steps = draw(st.sets(st.integers(1, n // 2), min_size=1, max_size=3))
    vs = [f"v{i:02d}" for i in range(n)]
    edges = {tuple(sorted((vs[i], vs[(i + s) % n]))) for i in range(n) for s in steps}
    return build_regular_graph("circ", vs, sorted(edges))


@given(circulants(), st.data())
def test_filtration_invariants(g, data):
    seed = data.draw(st.sampled_from(g.vertices))
    try:
        f = filter_regular(g, seed)
    except Disconnected:
        assert len(g.component_of(seed)) < len(g.vertices)
        return
    assert check_filtration(f, g) == []
    assert sum(f.degrees) == len(g.edges)
    for k in range(1, len(f) + 1):
        prefix = set(f.ordering[:k])
        sub = build_graph("p", list(prefix), [e for e in g.edges if set(e) <= prefix])
        assert sub.is_connected()
    fc = filter_complex(validate_complex([g]), seed)
    assert (fc.ordering, fc.strata, fc.downward_edges) == (f.ordering, f.strata, f.downward_edges)


# brute-force check of the intersection axioms on small complexes

K4 = ["v0", "v1", "v2", "v3"]
CANDIDATES = ([complete(f"K{''.join(s[-1] for s in vs)}", vs)
               for k in (2, 3) for vs in combinations(K4, k)]
              + [complete("K0123", K4)])


def _axioms_hold(members):
    """Direct set-level check: each nonempty (V1 & V2, E1 & E2) is regular and a member."""
    shapes = {(frozenset(m.vertices), frozenset(m.edges)) for m in members}
    for a, b in combinations(members, 2):
        vs = set(a.vertices) & set(b.vertices)
        es = set(a.edges) & set(b.edges)
        if not vs:
            continue
        degs = {v: sum(v in e for e in es) for v in vs}
        if len(set(degs.values())) > 1 or (frozenset(vs), frozenset(es)) not in shapes:
            return False
    return True


@given(st.lists(st.sampled_from(CANDIDATES), min_size=1, max_size=6, unique_by=lambda g: g.name))
def test_validate_complex_matches_brute_force(members):
    expected = _axioms_hold(members)
    try:
        validate_complex(members)
        accepted = True
    except (IntersectionNotMember, IntersectionNotRegular):
        accepted = False
    assert accepted == expected
