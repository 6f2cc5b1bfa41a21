"""GKM data on a simplicial graph complex: axial function, connection, and the
checks built on them (GKM axioms, r~, divisiveness, downward Euler classes).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra.rational import RationalVector
from .algebra.theory import DEFAULT_TRUNCATION, Theory, make_theory
from .errors import GraphError, NonIntegralCharacter
from .graphs import Filtration, OrientedEdge, SimplicialGraphComplex

ThetaMap = Mapping[OrientedEdge, OrientedEdge]


@dataclass(frozen=True, eq=False)
class AxialFunction:
    values: Mapping[OrientedEdge, RationalVector]
    weights: Mapping[OrientedEdge, int]

    def alpha(self, e: OrientedEdge) -> RationalVector:
        return self.values[e]

    def r(self, e: OrientedEdge) -> int:
        return self.weights[e]

    def __eq__(self, other):
        return (isinstance(other, AxialFunction) and dict(self.values) == dict(other.values)
                and dict(self.weights) == dict(other.weights))


@dataclass(frozen=True, eq=False)
class Connection:
    """theta_e for each oriented edge e: edges at s(e) -> edges at t(e)."""

    maps: Mapping[OrientedEdge, ThetaMap]

    def theta(self, e: OrientedEdge) -> ThetaMap:
        return self.maps.get(e, {})

    def __eq__(self, other):
        return (isinstance(other, Connection)
                and {k: dict(v) for k, v in self.maps.items()}
                == {k: dict(v) for k, v in other.maps.items()})


@dataclass(frozen=True, eq=False)
class GKMComplex:
    complex: SimplicialGraphComplex
    torus_rank: int
    axial: AxialFunction
    connection: Connection
    metadata: dict = field(default_factory=dict)

    @property
    def vertices(self):
        return self.complex.vertices

    def alpha(self, e: OrientedEdge) -> RationalVector:
        return self.axial.alpha(e)

    def r(self, e: OrientedEdge) -> int:
        return self.axial.r(e)

    def oriented_edges(self) -> list[OrientedEdge]:
        return self.complex.union_graph().oriented_edges()

    def members_containing(self, e: OrientedEdge):
        return self.complex.members_with_edges([e.undirected])

    def __eq__(self, other):
        return (isinstance(other, GKMComplex) and self.complex == other.complex
                and self.torus_rank == other.torus_rank and self.axial == other.axial
                and self.connection == other.connection)


def make_gkm_complex(complex: SimplicialGraphComplex, torus_rank: int,
                     alpha: Mapping[OrientedEdge, Sequence], r: Mapping[OrientedEdge, int],
                     theta: Mapping[OrientedEdge, ThetaMap], metadata: dict | None = None
                     ) -> GKMComplex:
    """Assemble a GKM complex. Only structural consistency is enforced here;
    the GKM axioms are checked by :func:`validate_axial` / :func:`validate_connection`."""
    edges = complex.edges
    for e in list(alpha) + list(r) + list(theta):
        if e.undirected not in edges:
            raise GraphError(f"data given for {e}, which is not an edge of the complex")
    values = {e: v if isinstance(v, RationalVector) else RationalVector(v)
              for e, v in alpha.items()}
    for e, v in values.items():
        if v.rank != torus_rank:
            raise GraphError(f"alpha({e}) has {v.rank} components, torus rank is {torus_rank}")
    maps = {e: dict(m) for e, m in theta.items()}
    return GKMComplex(complex, torus_rank, AxialFunction(values, dict(r)),
                      Connection(maps), dict(metadata or {}))


# reports

@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    detail: str

    def __str__(self):
        return f"[{self.kind}] {self.where}: {self.detail}"


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind, where, detail):
        self.violations.append(Violation(kind, str(where), detail))

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


@dataclass
class ConnectionReport(Report):
    witnesses: dict[tuple[OrientedEdge, OrientedEdge], int] = field(default_factory=dict)


def _fmt(v: RationalVector) -> str:
    return "(" + ", ".join(v.to_strings()) + ")"


def validate_axial(gc: GKMComplex) -> Report:
    """Check that alpha and r are defined, satisfy the reversal rule with
    integral r_e alpha(e), and are pairwise independent at each vertex of each member."""
    rep = Report()
    ax = gc.axial
    for e in gc.oriented_edges():
        if e not in ax.values:
            rep.add("missing", e, "axial value undefined")
            continue
        if e not in ax.weights:
            rep.add("missing", e, "weight r undefined")
            continue
        r = ax.weights[e]
        if not isinstance(r, int) or r <= 0:
            rep.add("weight", e, f"r = {r!r} is not a positive integer")
            continue
        a = ax.values[e]
        if a.rank != gc.torus_rank:
            rep.add("rank", e, f"alpha has {a.rank} components, expected {gc.torus_rank}")
        if a.is_zero():
            rep.add("zero", e, "alpha(e) = 0")
        if not a.scaled(r).is_integral():
            rep.add("integrality", e, f"r*alpha = {_fmt(a.scaled(r))} is not integral")
    for e in gc.oriented_edges():
        eb = e.reversed()
        if e > eb or not all(x in ax.values and x in ax.weights for x in (e, eb)):
            continue
        re_ = ax.values[e].scaled(ax.weights[e])
        rb = ax.values[eb].scaled(ax.weights[eb])
        if re_ != rb and re_ != -rb:
            rep.add("reversal", e, f"r*alpha = {_fmt(re_)} but reverse gives {_fmt(rb)}")
    for m in gc.complex.members:
        for v in m.vertices:
            star = [e for e in m.edges_at(v) if e in ax.values]
            for i, e1 in enumerate(star):
                for e2 in star[i + 1:]:
                    if ax.values[e1].is_parallel(ax.values[e2]):
                        rep.add("independence", f"{v} in {m.name}",
                                f"alpha({e1}) and alpha({e2}) are linearly dependent")
    return rep


def rtilde(gc: GKMComplex, e: OrientedEdge) -> int:
    """Least positive r with r*alpha(e) integral."""
    return gc.alpha(e).denominator


def congruence_witness(alpha_e: RationalVector, r_e: int, diff: RationalVector) -> int | None:
    """Least c > 0 with c*diff an integer multiple of r_e*alpha_e, or None."""
    if diff.is_zero():
        return 1
    lam = diff.ratio_to(alpha_e)
    if lam is None:
        return None
    return (lam / r_e).denominator


def validate_connection(gc: GKMComplex) -> ConnectionReport:
    """Connection axioms within each member plus the congruence condition.

    Records the minimal positive witness c_{e,e'} for every checked pair.
    """
    rep = ConnectionReport()
    ax = gc.axial
    conn = gc.connection
    for e in gc.oriented_edges():
        th = conn.theta(e)
        eb = e.reversed()
        if th.get(e) != eb:
            rep.add("theta(e)", e, f"theta_e(e) = {th.get(e)} instead of {eb}")
        back = conn.theta(eb)
        for e1, e2 in th.items():
            if back.get(e2) != e1:
                rep.add("inverse", e, f"theta of reverse does not send {e2} back to {e1}")
        for m in gc.members_containing(e):
            dom = m.edges_at(e.source)
            cod = set(m.edges_at(e.target))
            images = []
            for e1 in dom:
                img = th.get(e1)
                if img is None:
                    rep.add("domain", e, f"theta_e undefined on {e1} (member {m.name})")
                    continue
                if img not in cod:
                    rep.add("member", e, f"theta_e({e1}) = {img} leaves member {m.name}")
                    continue
                images.append(img)
                if e1 in ax.values and img in ax.values and e in ax.values and e in ax.weights:
                    diff = ax.values[img] - ax.values[e1]
                    c = congruence_witness(ax.values[e], ax.weights[e], diff)
                    if c is None:
                        rep.add("congruence", f"{e}, {e1}",
                                f"alpha({img}) - alpha({e1}) = {_fmt(diff)} "
                                f"is not a multiple of alpha({e})")
                    else:
                        rep.witnesses[(e, e1)] = c
            if len(set(images)) != len(images):
                rep.add("bijection", e, f"theta_e is not injective on member {m.name}")
    return rep


def validate_gkm(gc: GKMComplex) -> Report:
    rep = validate_axial(gc)
    rep.violations.extend(validate_connection(gc).violations)
    return rep


@dataclass(frozen=True)
class DivisiveReport:
    ok: bool
    witness: OrientedEdge | None = None
    rtilde: int = 1

    def __bool__(self):
        return self.ok


def check_divisive(gc: GKMComplex, filt: Filtration) -> DivisiveReport:
    """True iff every downward edge has an integral axial value (r~ = 1)."""
    for down in filt.downward_edges:
        for e in down:
            rt = rtilde(gc, e)
            if rt != 1:
                return DivisiveReport(False, e, rt)
    return DivisiveReport(True)


@dataclass(frozen=True)
class DownwardEuler:
    j: int
    s: int
    edge: OrientedEdge
    character: tuple[int, ...]
    euler: object


def _theory(theory, rank, truncation) -> Theory:
    if isinstance(theory, Theory):
        if theory.rank != rank:
            raise ValueError(f"theory rank {theory.rank} does not match torus rank {rank}")
        return theory
    return make_theory(theory, rank, truncation)


def downward_euler_data(gc: GKMComplex, filt: Filtration, theory="H",
                        truncation: int = DEFAULT_TRUNCATION, strict: bool = False
                        ) -> list[list[DownwardEuler]]:
    """Per filtration index j, the characters r~_e alpha(e) of the edges e = b_j -> b_s
    (s < j) and their Euler classes. With ``strict`` a non-integral alpha(e) raises."""
    th = _theory(theory, gc.torus_rank, truncation)
    pos = filt.position
    out = []
    for j, down in enumerate(filt.downward_edges):
        row = []
        for e in down:
            a = gc.alpha(e)
            if strict and not a.is_integral():
                raise NonIntegralCharacter(e, a)
            chi = a.integral_scaling()
            row.append(DownwardEuler(j, pos[e.target], e, chi, th.euler(chi)))
        out.append(row)
    return out


def total_euler(row: Sequence[DownwardEuler], theory: Theory):
    """e_T(xi^j): product of the downward Euler classes (1 for the empty product)."""
    out = theory.one()
    for d in row:
        out = out * d.euler
    return out

