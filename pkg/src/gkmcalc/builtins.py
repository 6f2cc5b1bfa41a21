"""Built-in example complexes.

The weighted family: vertex i carries a weight c_i and an integral character
Y_i; on every edge alpha(v_i v_j) = Y_j - (c_j / c_i) Y_i with r = |c_i|, and the
connection is theta_{v_i v_j}(v_i v_l) = v_j v_l inside each member.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .algebra.rational import RationalVector
from .graphs import (OrientedEdge, RegularGraph, SimplicialGraphComplex, build_regular_graph,
                     validate_complex)
from .gkm import GKMComplex, make_gkm_complex

# fixed-point characters of the four-vertex weighted complex (in y_1..y_4)
FIG3_CHARACTERS = ((1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0))
FIG3_MEMBERS = (("O1", (0, 1, 2)), ("O2", (0, 1, 3)), ("O3", (0, 1)))


@dataclass(frozen=True)
class WeightedProjectiveSpec:
    weights: tuple[int, ...]
    torus_rank: int
    characters: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.weights) != len(self.characters):
            raise ValueError("one character per weight is required")
        if any(c == 0 for c in self.weights):
            raise ValueError("weights must be nonzero")
        if any(len(ch) != self.torus_rank for ch in self.characters):
            raise ValueError("characters must have torus_rank components")
        if len(set(self.characters)) != len(self.characters):
            raise ValueError("characters must be pairwise distinct")


def vertex(i: int) -> str:
    return f"v{i}"


def _complete_member(name: str, idx: Sequence[int]) -> RegularGraph:
    vs = [vertex(i) for i in idx]
    return build_regular_graph(name, vs, list(combinations(vs, 2)))


def _standard_connection(c: SimplicialGraphComplex):
    """theta_{v_i v_j}(v_i v_l) = v_j v_l for every member containing v_i v_j."""
    theta = {}
    for e in c.union_graph().oriented_edges():
        m = {e: e.reversed()}
        for mem in c.members_with_edges([e.undirected]):
            for e1 in mem.edges_at(e.source):
                if e1 != e:
                    m[e1] = OrientedEdge(e.target, e1.target)
        theta[e] = m
    return theta


@lru_cache(maxsize=64)
def _weighted_structure(members: tuple[tuple[str, tuple[int, ...]], ...]):
    # the graph and connection do not depend on the weights
    c = validate_complex([_complete_member(name, idx) for name, idx in members])
    return c, _standard_connection(c)


def make_weighted_complex(wps: WeightedProjectiveSpec,
                          members: Sequence[tuple[str, Sequence[int]]],
                          metadata: dict | None = None) -> GKMComplex:
    """GKM complex whose members are complete graphs on the given vertex subsets."""
    c, theta = _weighted_structure(tuple((name, tuple(idx)) for name, idx in members))
    Y = wps.characters
    alpha, r = {}, {}
    for e in c.union_graph().oriented_edges():
        i, j = int(e.source[1:]), int(e.target[1:])
        ci, cj = wps.weights[i], wps.weights[j]
        sgn = 1 if ci > 0 else -1
        # (c_i Y_j - c_j Y_i) / c_i
        alpha[e] = RationalVector.from_integral(
            [sgn * (ci * a - cj * b) for a, b in zip(Y[j], Y[i])], abs(ci))
        r[e] = abs(ci)
    meta = {"weights": list(wps.weights)}
    meta.update(metadata or {})
    return make_gkm_complex(c, wps.torus_rank, alpha, r, theta, meta)


def make_fig3_complex(c0: int, c1: int, c2: int, c3: int) -> GKMComplex:
    """Two triangles v0v1v2, v0v1v3 glued along v0v1, plus the shared edge as a member."""
    wps = WeightedProjectiveSpec((c0, c1, c2, c3), 4, FIG3_CHARACTERS)
    return make_weighted_complex(wps, FIG3_MEMBERS, {"builtin": "fig3"})


def make_weighted_projective_line(q0: int, q1: int) -> GKMComplex:
    """The spindle: one edge, rank-one torus acting on the second coordinate."""
    if q0 < 1 or q1 < 1:
        raise ValueError("weights of a weighted projective line must be positive")
    wps = WeightedProjectiveSpec((q0, q1), 1, ((0,), (1,)))
    return make_weighted_complex(wps, [("WP", (0, 1))], {"builtin": "wp-line"})


def make_complete_gkm(n_plus_1: int) -> GKMComplex:
    """K_{n+1} with alpha(v_i v_j) = y_{j+1} - y_{i+1} (the CP^n graph)."""
    k = n_plus_1
    if k < 2:
        raise ValueError("need at least two vertices")
    c = validate_complex([_complete_member(f"K{k}", range(k))])
    alpha, r = {}, {}
    for e in c.union_graph().oriented_edges():
        i, j = int(e.source[1:]), int(e.target[1:])
        alpha[e] = RationalVector([int(t == j) - int(t == i) for t in range(k)])
        r[e] = 1
    return make_gkm_complex(c, k, alpha, r, _standard_connection(c),
                            {"builtin": "complete", "size": k})


# plain graphs and complexes of the filtration examples

def fig1_graph() -> RegularGraph:
    """Degree-4 graph on b0..b5: the octahedron, antipodes (b0,b5), (b1,b3), (b2,b4)."""
    vs = [f"b{i}" for i in range(6)]
    antipodal = {frozenset(p) for p in (("b0", "b5"), ("b1", "b3"), ("b2", "b4"))}
    edges = [p for p in combinations(vs, 2) if frozenset(p) not in antipodal]
    return build_regular_graph("fig1", vs, edges)


def fig2_complex() -> SimplicialGraphComplex:
    """A triangle b0b1b3 and a 4-cycle b0b1b4b2 glued along the edge b0b1."""
    tri = build_regular_graph("triangle", ["b0", "b1", "b3"],
                              [("b0", "b1"), ("b1", "b3"), ("b0", "b3")])
    rect = build_regular_graph("rectangle", ["b0", "b1", "b4", "b2"],
                               [("b0", "b1"), ("b1", "b4"), ("b4", "b2"), ("b2", "b0")])
    shared = build_regular_graph("shared", ["b0", "b1"], [("b0", "b1")])
    return validate_complex([tri, rect, shared])


def triangle_edges_complex() -> SimplicialGraphComplex:
    """The three edges of a triangle as separate members (with their vertex meets)."""
    vs = ["v0", "v1", "v2"]
    members = [build_regular_graph(f"e{a[1:]}{b[1:]}", [a, b], [(a, b)])
               for a, b in combinations(vs, 2)]
    members += [build_regular_graph(f"p{v[1:]}", [v], []) for v in vs]
    return validate_complex(members)


def single_member_complex(g: RegularGraph) -> SimplicialGraphComplex:
    return validate_complex([g])


BUILTIN_GKM = {
    "fig3": (make_fig3_complex, (8, 4, 2, 2)),
    "wp-line": (make_weighted_projective_line, (1, 1)),
    "complete": (make_complete_gkm, (3,)),
}

BUILTIN_GRAPHS = {
    "fig1": lambda: single_member_complex(fig1_graph()),
    "fig2": fig2_complex,
    "triangle-edges": triangle_edges_complex,
}


def builtin(name: str, args: Sequence[int] = ()) -> GKMComplex | SimplicialGraphComplex:
    """Look up a built-in by name; GKM builtins accept integer arguments."""
    if name in BUILTIN_GKM:
        fn, default = BUILTIN_GKM[name]
        return fn(*(args or default))
    if name in BUILTIN_GRAPHS:
        if args:
            raise ValueError(f"builtin {name!r} takes no arguments")
        return BUILTIN_GRAPHS[name]()
    raise KeyError(f"unknown builtin {name!r}; known: "
                   + ", ".join(sorted(BUILTIN_GKM) + sorted(BUILTIN_GRAPHS)))
