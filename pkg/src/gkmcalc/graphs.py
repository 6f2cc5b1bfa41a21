"""Regular graphs, simplicial graph complexes and vertex filtrations.

Vertices are string labels. An undirected edge is stored as the sorted pair of
its endpoints; :class:`OrientedEdge` is the oriented view used for axial data.
"""

from __future__ import annotations

import logging
import weakref
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (DanglingEndpoint, Disconnected, DuplicateEdge, DuplicateVertex,
                     GraphError, IntersectionNotMember, IntersectionNotRegular,
                     NoFiltration, NonRegular, SelfLoop)

log = logging.getLogger(__name__)

Edge = tuple[str, str]


def edge(u: str, v: str) -> Edge:
    """Canonical undirected edge."""
    return (u, v) if u <= v else (v, u)


class OrientedEdge:
    """Edge from ``source`` to ``target``; immutable, hashable and interned
    (equal edges are the same object, which keeps dictionary lookups cheap)."""

    __slots__ = ("source", "target", "_hash", "__weakref__")
    _pool: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()

    def __new__(cls, source: str, target: str):
        key = (source, target)
        obj = cls._pool.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "source", source)
            object.__setattr__(obj, "target", target)
            object.__setattr__(obj, "_hash", hash(key))
            cls._pool[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("OrientedEdge is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, OrientedEdge):
            return NotImplemented
        return self.source == other.source and self.target == other.target

    def __lt__(self, other):
        return (self.source, self.target) < (other.source, other.target)

    def __gt__(self, other):
        return (self.source, self.target) > (other.source, other.target)

    def __reduce__(self):
        return (OrientedEdge, (self.source, self.target))

    def __repr__(self):
        return f"OrientedEdge({self.source!r}, {self.target!r})"

    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.target, self.source)

    @property
    def undirected(self) -> Edge:
        return edge(self.source, self.target)

    @property
    def label(self) -> str:
        return f"{self.source}->{self.target}"

    @classmethod
    def parse(cls, label: str) -> "OrientedEdge":
        src, sep, tgt = label.partition("->")
        if not sep or not src.strip() or not tgt.strip():
            raise ValueError(f"bad oriented edge label {label!r}")
        return cls(src.strip(), tgt.strip())

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Graph:
    """A finite simple graph; no regularity assumed."""

    name: str
    vertices: tuple[str, ...]
    edges: frozenset[Edge]

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def _adjacency(self) -> dict[str, list[str]]:
        return adjacency(self.vertices, self.edges)

    def neighbors(self, v: str) -> list[str]:
        return list(self._adjacency[v])

    def degrees(self) -> dict[str, int]:
        deg = {v: 0 for v in self.vertices}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def is_regular(self) -> bool:
        return len(set(self.degrees().values())) <= 1

    def is_empty(self) -> bool:
        return not self.vertices

    def has_edge(self, u: str, v: str) -> bool:
        return edge(u, v) in self.edges

    def oriented_edges(self) -> list[OrientedEdge]:
        return list(self._oriented)

    @cached_property
    def _oriented(self) -> tuple[OrientedEdge, ...]:
        out = []
        for a, b in sorted(self.edges):
            out.append(OrientedEdge(a, b))
            out.append(OrientedEdge(b, a))
        return tuple(out)

    def edges_at(self, v: str) -> list[OrientedEdge]:
        """Edges starting at ``v`` (the star E_v), sorted by target."""
        return list(self._stars[v])

    @cached_property
    def _stars(self) -> dict[str, tuple[OrientedEdge, ...]]:
        return {v: tuple(OrientedEdge(v, w) for w in ws) for v, ws in self._adjacency.items()}

    def same_as(self, other: "Graph") -> bool:
        return self.vertex_set == other.vertex_set and self.edges == other.edges

    def component_of(self, seed: str) -> set[str]:
        adj = self._adjacency
        seen = {seed}
        queue = deque([seed])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def is_connected(self) -> bool:
        return not self.vertices or len(self.component_of(self.vertices[0])) == len(self.vertices)


@dataclass(frozen=True)
class RegularGraph(Graph):
    degree: int = 0


def adjacency(vertices: Iterable[str], edges: Iterable[Edge]) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        adj[v].sort()
    return adj


def _expected_degree(degrees: dict[str, int]) -> int:
    counts = Counter(degrees.values())
    best = max(counts.values())
    return min(d for d, c in counts.items() if c == best)


def build_graph(name: str, vertices: Sequence[str], edge_pairs: Iterable[Sequence[str]]) -> Graph:
    """Checked constructor for a simple graph (regularity not required)."""
    seen: set[str] = set()
    for v in vertices:
        if not isinstance(v, str) or not v:
            raise GraphError(f"vertex labels must be non-empty strings, got {v!r}")
        if v in seen:
            raise DuplicateVertex(v)
        seen.add(v)
    edges: set[Edge] = set()
    for pair in edge_pairs:
        u, v = pair
        if u == v:
            raise SelfLoop(u)
        for x in (u, v):
            if x not in seen:
                raise DanglingEndpoint((u, v), x)
        e = edge(u, v)
        if e in edges:
            raise DuplicateEdge(e)
        edges.add(e)
    return Graph(name, tuple(vertices), frozenset(edges))


def build_regular_graph(name: str, vertices: Sequence[str],
                        edge_pairs: Iterable[Sequence[str]]) -> RegularGraph:
    """Build a regular graph; raises NonRegular naming the offending vertices."""
    g = build_graph(name, vertices, edge_pairs)
    if not g.vertices:
        raise GraphError(f"graph {name!r} has no vertices")
    return as_regular(g)


def as_regular(g: Graph) -> RegularGraph:
    degrees = g.degrees()
    expected = _expected_degree(degrees)
    offenders = [(v, d) for v, d in degrees.items() if d != expected]
    if offenders:
        v, d = offenders[0]
        raise NonRegular(v, d, expected, offenders)
    return RegularGraph(g.name, g.vertices, g.edges, expected)


def intersect(g1: Graph, g2: Graph, name: str | None = None) -> Graph:
    """(V1 ∩ V2, E1 ∩ E2); may be empty or irregular."""
    vs = g2.vertex_set
    verts = tuple(v for v in g1.vertices if v in vs)
    return Graph(name or f"{g1.name}&{g2.name}", verts, g1.edges & g2.edges)


@dataclass(frozen=True)
class SimplicialGraphComplex:
    members: tuple[RegularGraph, ...]

    @property
    def names(self) -> list[str]:
        return [m.name for m in self.members]

    def member(self, name: str) -> RegularGraph:
        for m in self.members:
            if m.name == name:
                return m
        raise KeyError(name)

    @property
    def vertices(self) -> tuple[str, ...]:
        out: dict[str, None] = {}
        for m in self.members:
            for v in m.vertices:
                out.setdefault(v)
        return tuple(out)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset().union(*(m.edges for m in self.members))

    def union_graph(self) -> Graph:
        return self._union

    def members_with_edges(self, edges: Iterable[Edge]) -> list[RegularGraph]:
        es = set(edges)
        if len(es) == 1:
            return list(self._edge_members.get(next(iter(es)), ()))
        return [m for m in self.members if es <= m.edges]

    @cached_property
    def _edge_members(self) -> dict[Edge, tuple[RegularGraph, ...]]:
        out: dict[Edge, list[RegularGraph]] = {}
        for m in self.members:
            for e in m.edges:
                out.setdefault(e, []).append(m)
        return {e: tuple(ms) for e, ms in out.items()}

    @cached_property
    def _union(self) -> Graph:
        return Graph("union", self.vertices, self.edges)

    def minimal_member(self, edges: Iterable[Edge]) -> RegularGraph | None:
        """Smallest member containing all ``edges`` (unique for a valid complex)."""
        cands = self.members_with_edges(edges)
        if not cands:
            return None
        return min(cands, key=lambda m: (len(m.edges), len(m.vertices)))

    def members_at(self, v: str) -> list[RegularGraph]:
        return [m for m in self.members if v in m.vertex_set]


def validate_complex(members: Sequence[Graph]) -> SimplicialGraphComplex:
    """Check the intersection axioms and return the complex."""
    if not members:
        raise GraphError("a complex needs at least one member")
    names = [m.name for m in members]
    dup = [n for n, c in Counter(names).items() if c > 1]
    if dup:
        raise GraphError(f"duplicate member name {dup[0]!r}")
    regular = [m if isinstance(m, RegularGraph) else as_regular(m) for m in members]
    for i, a in enumerate(regular):
        for b in regular[i + 1:]:
            meet = intersect(a, b)
            if meet.is_empty():
                continue
            if not meet.is_regular():
                raise IntersectionNotRegular(a.name, b.name)
            if not any(meet.same_as(m) for m in regular):
                raise IntersectionNotMember(a.name, b.name)
    return SimplicialGraphComplex(tuple(regular))


@dataclass(frozen=True)
class Filtration:
    """Vertex ordering b_0..b_m with nested edge sets E_0 ⊆ ... ⊆ E_m."""

    ordering: tuple[str, ...]
    strata: tuple[frozenset[Edge], ...]
    downward_edges: tuple[tuple[OrientedEdge, ...], ...]
    members: tuple[str | None, ...] = field(default=())

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.downward_edges)

    @property
    def position(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.ordering)}

    def new_edges(self, j: int) -> frozenset[Edge]:
        """F_j = E_j minus E_{j-1}."""
        return self.strata[j] - (self.strata[j - 1] if j else frozenset())

    def __len__(self):
        return len(self.ordering)

    def summary(self) -> list[str]:
        lines = []
        for j, v in enumerate(self.ordering):
            down = ", ".join(e.target for e in self.downward_edges[j]) or "-"
            mem = f" in {self.members[j]}" if self.members and self.members[j] else ""
            lines.append(f"b{j} = {v}  d={len(self.downward_edges[j])}  down: {down}{mem}")
        return lines


def _filtration_from_ordering(ordering: Sequence[str], adj: dict[str, list[str]],
                              members: Sequence[str | None] | None = None) -> Filtration:
    pos = {v: i for i, v in enumerate(ordering)}
    strata = []
    down = []
    current: frozenset[Edge] = frozenset()
    for j, v in enumerate(ordering):
        targets = sorted((w for w in adj[v] if pos.get(w, len(ordering)) < j), key=pos.get)
        down.append(tuple(OrientedEdge(v, w) for w in targets))
        current = current | {edge(v, w) for w in targets}
        strata.append(current)
    return Filtration(tuple(ordering), tuple(strata), tuple(down),
                      tuple(members) if members is not None else (None,) * len(ordering))


def _check_seed(g: Graph, seed: str):
    if seed not in g.vertex_set:
        raise GraphError(f"seed {seed!r} is not a vertex")
    reached = g.component_of(seed)
    if len(reached) != len(g.vertices):
        raise Disconnected(len(reached), len(g.vertices))


def _anchor(ordering: Sequence[str], visited: set[str], adj) -> int | None:
    """Minimal k' such that b_k' still has a neighbour outside the ordering."""
    for k, v in enumerate(ordering):
        if any(w not in visited for w in adj[v]):
            return k
    return None


def filter_regular(g: Graph, seed: str) -> Filtration:
    """Greedy filtration of a connected graph from ``seed`` (lexicographic tie-break)."""
    _check_seed(g, seed)
    adj = adjacency(g.vertices, g.edges)
    ordering = [seed]
    visited = {seed}
    while len(ordering) < len(g.vertices):
        k = _anchor(ordering, visited, adj)
        nxt = min(w for w in adj[ordering[k]] if w not in visited)
        ordering.append(nxt)
        visited.add(nxt)
    return _filtration_from_ordering(ordering, adj)


@dataclass(frozen=True)
class StuckState:
    """Deepest partial filtration reached before the search gave up."""

    ordering: tuple[str, ...]
    edges: frozenset[Edge]
    blocked: tuple[tuple[str, tuple[Edge, ...]], ...]

    def describe(self) -> str:
        parts = [f"ordering {list(self.ordering)}"]
        for v, es in self.blocked:
            parts.append(f"{v} would add {[f'{a}{b}' for a, b in es]} spanning no single member")
        return "; ".join(parts)


def filter_complex(c: SimplicialGraphComplex, seed: str) -> Filtration:
    """Filtration of a simplicial graph complex.

    Same anchor rule as :func:`filter_regular`, but a vertex may only be added if
    all its new edges lie in one member. Admissible choices are explored
    depth-first in label order; NoFiltration carries the deepest stuck state.
    """
    g = c.union_graph()
    _check_seed(g, seed)
    adj = adjacency(g.vertices, g.edges)
    total = len(g.vertices)
    best: list[StuckState | None] = [None]

    def back_edges(v, visited):
        return tuple(sorted(edge(v, w) for w in adj[v] if w in visited))

    def search(ordering, visited, mems):
        if len(ordering) == total:
            return ordering, mems
        k = _anchor(ordering, visited, adj)
        blocked = []
        for cand in (w for w in adj[ordering[k]] if w not in visited):
            es = back_edges(cand, visited)
            m = c.minimal_member(es)
            if m is None:
                blocked.append((cand, es))
                continue
            visited.add(cand)
            found = search(ordering + [cand], visited, mems + [m.name])
            visited.discard(cand)
            if found:
                return found
        if blocked and (best[0] is None or len(ordering) > len(best[0].ordering)):
            es = frozenset(e for v in ordering for e in back_edges(v, set(ordering)))
            best[0] = StuckState(tuple(ordering), es, tuple(blocked))
        return None

    found = search([seed], {seed}, [None])
    if not found:
        log.info("no filtration from %s", seed)
        raise NoFiltration(best[0])
    ordering, mems = found
    return _filtration_from_ordering(ordering, adj, mems)


def check_filtration(f: Filtration, g: Graph) -> list[str]:
    """Return a list of violated filtration invariants (empty when valid)."""
    problems = []
    if sorted(f.ordering) != sorted(g.vertices):
        problems.append("ordering is not a bijection onto the vertices")
    if f.strata and f.strata[0]:
        problems.append("E_0 is not empty")
    seen: set[Edge] = set()
    for j, v in enumerate(f.ordering):
        fj = f.new_edges(j)
        if j and not f.strata[j - 1] <= f.strata[j]:
            problems.append(f"E_{j - 1} not contained in E_{j}")
        if any(v not in e for e in fj):
            problems.append(f"F_{j} has an edge not incident to b_{j}")
        if fj & seen:
            problems.append(f"F_{j} overlaps earlier strata")
        seen |= fj
        if {e.undirected for e in f.downward_edges[j]} != fj:
            problems.append(f"downward edges at b_{j} disagree with F_{j}")
    if seen != set(g.edges):
        problems.append("strata do not exhaust the edge set")
    return problems
