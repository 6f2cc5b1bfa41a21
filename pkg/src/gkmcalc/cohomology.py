"""Equivariant cohomology as a divisibility-constrained subring of
prod_{vertices} E_T(pt): membership, free module basis and decomposition.

A class is a tuple (x_0..x_m) indexed by the filtration order and lies in the
ring iff e_T(xi^{js}) divides x_j - x_s for every downward edge b_j -> b_s.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Mapping, Sequence

from .algebra.intlinalg import (hermite_normal_form, reduce_mod_lattice, solve_rational_linear,
                                solve_sparse)
from .algebra.theory import (DEFAULT_TRUNCATION, Cobordism, Cohomology, KTheory, Theory,
                             make_theory)
from .errors import (CapExceeded, CoprimalityFailure, NoIntegralExtension, NoSolution,
                     NotAMember, NotDivisible, NotDivisive, NotInSpan)
from .gkm import GKMComplex, check_divisive, downward_euler_data
from .graphs import Filtration, OrientedEdge

log = logging.getLogger(__name__)


class CohomologyClass:
    """A function from vertices to coefficient-ring elements."""

    __slots__ = ("theory", "values")

    def __init__(self, theory: Theory, values: Mapping[str, object]):
        self.theory = theory
        self.values = dict(values)

    @property
    def vertices(self) -> list[str]:
        return list(self.values)

    def __getitem__(self, v: str):
        return self.values[v]

    def items(self):
        return self.values.items()

    def _pointwise(self, other, op):
        if isinstance(other, CohomologyClass):
            if other.values.keys() != self.values.keys():
                raise ValueError("classes live on different vertex sets")
            return CohomologyClass(self.theory, {v: op(x, other.values[v])
                                                 for v, x in self.values.items()})
        return CohomologyClass(self.theory, {v: op(x, other) for v, x in self.values.items()})

    def __add__(self, other):
        return self._pointwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._pointwise(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._pointwise(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return CohomologyClass(self.theory, {v: -x for v, x in self.values.items()})

    def __eq__(self, other):
        return (isinstance(other, CohomologyClass) and self.theory == other.theory
                and self.values == other.values)

    def __hash__(self):
        return hash(tuple(self.values.items()))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.values.values())

    def render(self) -> list[str]:
        return [f"{v}: {x.render()}" for v, x in self.values.items()]

    def __repr__(self):
        return "CohomologyClass(" + "; ".join(self.render()) + ")"


@dataclass(frozen=True)
class Divisor:
    j: int
    s: int
    edge: OrientedEdge | None
    character: tuple[int, ...]
    euler: object


@dataclass(frozen=True, eq=False)
class CongruenceSystem:
    """Strata b_0..b_m and, for each j, the divisors e_T(xi^{js}) (s < j)."""

    theory: Theory
    ordering: tuple[str, ...]
    divisors: tuple[tuple[Divisor, ...], ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(d) for d in self.divisors)

    def __len__(self):
        return len(self.ordering)

    def pairs(self) -> list[tuple[int, int]]:
        return [(d.s, d.j) for row in self.divisors for d in row]

    def top(self, j: int):
        """e_T(xi^j), the product of the divisors at stratum j."""
        out = self.theory.one()
        for d in self.divisors[j]:
            out = out * d.euler
        return out

    def make_class(self, values: Sequence | Mapping) -> CohomologyClass:
        if isinstance(values, Mapping):
            return CohomologyClass(self.theory, {v: values[v] for v in self.ordering})
        if len(values) != len(self.ordering):
            raise ValueError("one value per vertex is required")
        return CohomologyClass(self.theory, dict(zip(self.ordering, values)))

    def constant_class(self, c=1) -> CohomologyClass:
        return self.make_class([self.theory.constant(c)] * len(self.ordering))

    def zero_class(self) -> CohomologyClass:
        return self.constant_class(0)


def _pairwise_independent(a: Sequence[int], b: Sequence[int]) -> bool:
    n = len(a)
    return any(a[i] * b[k] != a[k] * b[i] for i in range(n) for k in range(i + 1, n))


def system_from_characters(theory: Theory, ordering: Sequence[str],
                           downward: Sequence[Sequence[tuple[int, Sequence[int]]]]
                           ) -> CongruenceSystem:
    """Build a system directly from per-stratum lists of ``(s, character)``."""
    rows = []
    for j, row in enumerate(downward):
        divs = []
        for s, chi in row:
            if not 0 <= s < j:
                raise ValueError(f"divisor target {s} must precede stratum {j}")
            chi = tuple(int(c) for c in chi)
            divs.append(Divisor(j, s, OrientedEdge(ordering[j], ordering[s]), chi,
                                theory.euler(chi)))
        _check_coprime(ordering, j, divs)
        rows.append(tuple(divs))
    return CongruenceSystem(theory, tuple(ordering), tuple(rows))


def _check_coprime(ordering, j, divs):
    for i, d1 in enumerate(divs):
        if not any(d1.character):
            raise CoprimalityFailure(ordering[j], ordering[d1.s], ordering[d1.s])
        for d2 in divs[i + 1:]:
            if not _pairwise_independent(d1.character, d2.character):
                raise CoprimalityFailure(ordering[j], ordering[d1.s], ordering[d2.s])


def build_system(gc: GKMComplex, filt: Filtration, theory="H",
                 truncation: int = DEFAULT_TRUNCATION, rational: bool = False
                 ) -> CongruenceSystem:
    """The presentation of the equivariant cohomology ring attached to a filtration.

    Integral theories require divisive data; rational H accepts any valid data
    (the characters r~_e alpha(e) differ from alpha(e) by units of Q).
    """
    if isinstance(theory, Theory):
        th = theory
    else:
        th = make_theory(theory, gc.torus_rank, truncation, rational)
    if not th.rational:
        rep = check_divisive(gc, filt)
        if not rep.ok:
            raise NotDivisive((rep.witness.source, rep.witness.target), rep.rtilde)
    data = downward_euler_data(gc, filt, th)
    rows = []
    for j, row in enumerate(data):
        divs = tuple(Divisor(j, d.s, d.edge, d.character, d.euler) for d in row)
        _check_coprime(filt.ordering, j, divs)
        rows.append(divs)
    return CongruenceSystem(th, tuple(filt.ordering), tuple(rows))


# membership

@dataclass(frozen=True)
class MembershipResult:
    ok: bool
    witness: tuple[str, str, object] | None = None

    def __bool__(self):
        return self.ok


def is_member(sys: CongruenceSystem, x: CohomologyClass) -> MembershipResult:
    """Check every divisibility condition; the witness is the first failing
    (b_j, b_s, remainder). For MU the check is modulo the truncation."""
    if not x.theory.same(sys.theory):
        raise ValueError(f"class theory {x.theory.label} does not match {sys.theory.label}")
    vals = [x.values[v] for v in sys.ordering]
    for row in sys.divisors:
        for d in row:
            diff = vals[d.j] - vals[d.s]
            if diff.is_zero():
                continue
            try:
                sys.theory.exact_div(diff, d.euler)
            except NotDivisible as exc:
                rem = exc.remainder if not exc.remainder.is_zero() else exc.quotient
                return MembershipResult(False, (sys.ordering[d.j], sys.ordering[d.s], rem))
    return MembershipResult(True)


# basis construction

@dataclass(frozen=True)
class BasisClass:
    j: int
    cls: CohomologyClass
    multiplier: int = 1

    @property
    def vertex(self):
        return self.cls.vertices[self.j]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponents of total degree d in n variables, in descending lex order."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in monomials(n - 1, d - first):
            out.append((first,) + rest)
    return out


class _Support:
    """Unknown monomials for an extension value X and the quotients Q_s."""

    def __init__(self, x_monos, q_monos, keep=None, lead=None):
        self.x_monos = list(x_monos)
        self.q_monos = [list(q) for q in q_monos]
        self.keep = keep or (lambda m: True)
        # number of leading X coordinates that carry the canonical answer
        self.lead = len(self.x_monos) if lead is None else lead


def _build_rows(divs, fixed, sup: _Support, pins: Mapping | None = None):
    col_x = {m: i for i, m in enumerate(sup.x_monos)}
    ncols = len(sup.x_monos)
    rows: list[dict[int, int]] = []
    rhs: list = []
    for d, q_monos in zip(divs, sup.q_monos):
        eq: dict[tuple, dict[int, int]] = {m: {c: 1} for m, c in col_x.items()}
        for t, qm in enumerate(q_monos):
            col = ncols + t
            for te, ce in d.euler.terms.items():
                mono = _add(qm, te)
                if not sup.keep(mono):
                    continue
                row = eq.setdefault(mono, {})
                v = row.get(col, 0) - ce
                if v:
                    row[col] = v
                else:
                    row.pop(col, None)
        ncols += len(q_monos)
        f = fixed[d.s].terms
        for mono in set(eq) | set(f):
            rows.append(eq.get(mono, {}))
            rhs.append(f.get(mono, 0))
    for m, value in (pins or {}).items():
        rows.append({col_x[m]: 1})
        rhs.append(value)
    return rows, rhs, ncols


def _solve_canonical(divs, fixed, sup: _Support, rational: bool, pins=None):
    """Return X's terms (restricted to the leading coordinates), canonical modulo
    the lattice of admissible changes, or None if there is no solution."""
    rows, rhs, ncols = _build_rows(divs, fixed, sup, pins)
    nx, lead = len(sup.x_monos), sup.lead
    if rational:
        dense = [[0] * ncols for _ in rows]
        for r, row in enumerate(rows):
            for c, v in row.items():
                dense[r][c] = v
        try:
            x, _ = solve_rational_linear(dense, rhs, ncols)
        except NoSolution:
            return None
        vec = x[:lead]
    else:
        try:
            sol = solve_sparse(rows, rhs, ncols, want_kernel=True)
        except NoSolution:
            return None
        H = hermite_normal_form((k[:lead] for k in sol.kernel), lead)
        vec = reduce_mod_lattice(sol.particular[:lead], H)
    del nx
    return {sup.x_monos[i]: c for i, c in enumerate(vec) if c}


def _h_support(theory: Cohomology, divs, d: int, bound: int) -> _Support:
    n = theory.rank
    xs = [m for deg in range(d, bound + 1) for m in monomials(n, deg)]
    qs = [m for deg in range(max(d - 1, 0), bound) for m in monomials(n, deg)]
    return _Support(xs, [qs] * len(divs), lead=len(monomials(n, d)))


def _box(lo, hi):
    return list(product(*(range(a, b + 1) for a, b in zip(lo, hi))))


def _k_support(theory: KTheory, divs, fixed, grow: int):
    n = theory.rank
    pts = [(0,) * n]
    for dv in divs:
        pts.extend(dv.euler.terms)
        pts.extend(fixed[dv.s].terms)
    lo = [min(p[i] for p in pts) - grow for i in range(n)]
    hi = [max(p[i] for p in pts) + grow for i in range(n)]
    xs = sorted(_box(lo, hi), key=lambda m: (sum(m), m), reverse=True)
    qs = []
    for dv in divs:
        elo, ehi = dv.euler.min_exponents(), dv.euler.max_exponents()
        qlo = [a - b for a, b in zip(lo, elo)]
        qhi = [a - b for a, b in zip(hi, ehi)]
        qs.append(_box(qlo, qhi) if all(a <= b for a, b in zip(qlo, qhi)) else [])
    return _Support(xs, qs), (lo, hi)


def _k_reduce(x, modulus, lo, hi):
    """Canonical representative of x modulo the multiples of ``modulus`` whose
    support fits in the box [lo, hi]: eliminate every coefficient sitting on the
    graded-lex leading monomial of such a multiple."""
    key = x.key
    lead, lc = modulus.leading_term()
    mlo, mhi = modulus.min_exponents(), modulus.max_exponents()
    terms = dict(x.terms)
    done: set = set()
    while True:
        pending = [m for m in terms if m not in done]
        if not pending:
            break
        m = max(pending, key=key)
        shift = tuple(a - b for a, b in zip(m, lead))
        fits = all(l <= s + a and s + b <= h
                   for s, a, b, l, h in zip(shift, mlo, mhi, lo, hi))
        if not fits:
            done.add(m)
            continue
        f = terms[m] * lc  # lc is +-1
        for e, c in modulus.terms.items():
            mono = _add(e, shift)
            v = terms.get(mono, 0) - f * c
            if v:
                terms[mono] = v
            else:
                terms.pop(mono, None)
    return x._new(terms)


def _mu_support(theory: Cobordism, divs, d: int) -> _Support:
    n, N = theory.rank, theory.truncation
    ring = theory.ring

    def graded(deg, max_u):
        out = []
        for u in range(0, max_u + 1):
            for a in ring.monomials(u - deg):
                for mu in monomials(n, u):
                    out.append(mu + a)
        return out

    xs = graded(d, N)
    # a-free coordinates first: they must reproduce the cohomology answer
    xs.sort(key=lambda e: (any(e[n:]), ))
    qs = graded(d - 1, N - 1)
    return _Support(xs, [qs] * len(divs), keep=lambda e: sum(e[:n]) <= N)


def _common_value(divs, fixed):
    vals = [fixed[d.s] for d in divs]
    if vals and all(v == vals[0] for v in vals[1:]):
        return vals[0]
    return None


def default_degree_cap(sys: CongruenceSystem) -> int:
    return max(2 * max(sys.degrees, default=0), 1)


def _extend_h(sys, j, k, divs, fixed, cap, rational=False):
    d = sys.degrees[j]
    for bound in range(d, cap + 1):
        terms = _solve_canonical(divs, fixed, _h_support(sys.theory, divs, d, bound), rational)
        if terms is not None:
            return sys.theory.from_terms(terms)
        log.debug("phi_%d at b_%d: no solution with degree bound %d", j, k, bound)
    raise NoIntegralExtension(sys.ordering[j], sys.ordering[k], cap)


def _extend_k(sys, j, k, divs, fixed, cap):
    modulus = sys.theory.one()
    for dv in divs:
        modulus = modulus * dv.euler
    for grow in range(0, cap + 1):
        sup, (lo, hi) = _k_support(sys.theory, divs, fixed, grow)
        try:
            sol = solve_sparse(*_build_rows(divs, fixed, sup), want_kernel=False)
        except NoSolution:
            log.debug("phi_%d at b_%d: no solution in box grown by %d", j, k, grow)
            continue
        x = sys.theory.from_terms({m: c for m, c in zip(sup.x_monos, sol.particular) if c})
        return _k_reduce(x, modulus, lo, hi)
    raise NoIntegralExtension(sys.ordering[j], sys.ordering[k], cap)


def _extend_mu(sys, j, k, divs, fixed, h_value):
    th = sys.theory
    n = th.rank
    sup = _mu_support(th, divs, sys.degrees[j])
    g = th.ring.ngens
    pins = None
    if h_value is not None:
        pins = {m: 0 for m in sup.x_monos if not any(m[n:])}
        for e, c in h_value.terms.items():
            pins[e + (0,) * g] = c
    terms = _solve_canonical(divs, fixed, sup, False, pins)
    if terms is None and pins is not None:
        log.info("phi_%d at b_%d: no lift of the cohomology value; solving freely", j, k)
        terms = _solve_canonical(divs, fixed, sup, False)
    if terms is None:
        raise NoIntegralExtension(sys.ordering[j], sys.ordering[k], th.truncation)
    return th.from_terms(terms)


def additive_shadow(sys: CongruenceSystem) -> CongruenceSystem:
    """The H system in u-variables with the same characters as an MU system."""
    h = Cohomology(sys.theory.rank)
    rows = [[(d.s, d.character) for d in row] for row in sys.divisors]
    return system_from_characters(h, sys.ordering, rows)


def compute_basis(sys: CongruenceSystem, degree_cap: int | None = None) -> list[BasisClass]:
    """Free module basis phi_0..phi_m with (phi_j)_s = 0 for s < j and
    (phi_j)_j = e_T(xi^j); later values solved stratum by stratum.

    Each extension solves the divisibility conditions as an integer linear system
    over the unknown coefficients and picks a canonical solution (Hermite reduction
    modulo the admissible changes; for K, reduction modulo multiples of the product
    of the divisors). MU classes are lifts of the H classes with the same
    characters, so setting all a_ij to zero recovers the H basis.
    """
    th = sys.theory
    cap = default_degree_cap(sys) if degree_cap is None else degree_cap
    h_basis = None
    if isinstance(th, Cobordism):
        h_basis = compute_basis(additive_shadow(sys), None)
    m = len(sys)
    out = []
    for j in range(m):
        if isinstance(th, Cohomology) and sys.degrees[j] > cap:
            raise CapExceeded(sys.ordering[j], cap)
        fixed = [th.zero()] * j + [sys.top(j)]
        for k in range(j + 1, m):
            divs = sys.divisors[k]
            common = _common_value(divs, fixed)
            if common is not None:
                fixed.append(common)
                continue
            if isinstance(th, Cohomology):
                x = _extend_h(sys, j, k, divs, fixed, cap, th.rational)
            elif isinstance(th, KTheory):
                x = _extend_k(sys, j, k, divs, fixed, cap)
            else:
                x = _extend_mu(sys, j, k, divs, fixed, h_basis[j].cls.values[sys.ordering[k]])
            fixed.append(x)
        out.append(BasisClass(j, sys.make_class(fixed)))
        log.debug("phi_%d done", j)
    return out


# decomposition

def decompose(sys: CongruenceSystem, basis: Sequence[BasisClass], x: CohomologyClass,
              check: bool = True) -> list:
    """Coefficients p_j with x = sum p_j phi_j, by triangular elimination."""
    if check:
        res = is_member(sys, x)
        if not res:
            raise NotAMember(res.witness)
    residue = x
    coeffs = []
    for b in basis:
        v = sys.ordering[b.j]
        top = b.cls.values[v]
        try:
            p = sys.theory.exact_div(residue.values[v], top)
        except NotDivisible as exc:
            raise NotInSpan(v, exc.remainder) from None
        coeffs.append(p)
        if not p.is_zero():
            residue = residue - b.cls * p
    if not residue.is_zero():
        bad = next(v for v, val in residue.items() if not val.is_zero())
        raise NotInSpan(bad, residue.values[bad])
    return coeffs


def reconstruct(sys: CongruenceSystem, basis: Sequence[BasisClass], coeffs: Sequence):
    out = sys.zero_class()
    for b, p in zip(basis, coeffs):
        out = out + b.cls * p
    return out


# graded structure (H only)

def graded_rank(sys: CongruenceSystem, basis: Sequence[BasisClass] | None,
                up_to_degree: int, cross_check: bool = False) -> list[int]:
    """Rank over Z of each homogeneous piece of degree 0..up_to_degree.

    The free module on generators of degrees d_j has
    sum_j #{monomials of degree d - d_j} elements in degree d. With
    ``cross_check`` the numbers are compared with the ranks of the member
    lattices computed directly from the divisibility constraints.
    """
    if not isinstance(sys.theory, Cohomology):
        raise ValueError("graded ranks are defined for H only")
    n = sys.theory.rank
    degs = ([sys.degrees[b.j] for b in basis] if basis is not None else list(sys.degrees))
    ranks = []
    for d in range(up_to_degree + 1):
        ranks.append(sum(comb(d - dj + n - 1, n - 1) if d >= dj else 0 for dj in degs)
                     if n else sum(1 for dj in degs if dj == d))
    if cross_check:
        for d, r in enumerate(ranks):
            got = len(member_lattice(sys, d)[0])
            if got != r:
                raise AssertionError(f"degree {d}: formula gives {r}, constraints give {got}")
    return ranks


def _monomials_upto(n, degree, cumulative):
    if not cumulative:
        return monomials(n, degree)
    return [m for d in range(degree + 1) for m in monomials(n, d)]


def lattice_coordinates(sys: CongruenceSystem, degree: int, cumulative: bool = False):
    """(vertex index, monomial) pairs spanning degree ``degree`` (or <= ``degree``)."""
    monos = _monomials_upto(sys.theory.rank, degree, cumulative)
    return [(v, m) for v in range(len(sys)) for m in monos]


def constraint_matrix(sys: CongruenceSystem, degree: int, cumulative: bool = False):
    """Sparse rows of the homogeneous system x_j - x_s - q_js e_js = 0 written
    coefficient-wise. The first ``len(coords)`` columns are the member coordinates,
    the remaining ones the quotient coefficients. Returns (rows, ncols, coords)."""
    if not isinstance(sys.theory, Cohomology):
        raise ValueError("coefficient lattices are defined for H only")
    n = sys.theory.rank
    coords = lattice_coordinates(sys, degree, cumulative)
    monos = _monomials_upto(n, degree, cumulative)
    col = {c: i for i, c in enumerate(coords)}
    qmonos = _monomials_upto(n, degree - 1, cumulative) if degree else []
    rows = []
    ncols = len(coords)
    for row_divs in sys.divisors:
        for d in row_divs:
            eq: dict = {m: {col[(d.j, m)]: 1, col[(d.s, m)]: -1} for m in monos}
            for t, qm in enumerate(qmonos):
                c = ncols + t
                for te, ce in d.euler.terms.items():
                    row = eq.setdefault(_add(qm, te), {})
                    row[c] = row.get(c, 0) - ce
            ncols += len(qmonos)
            rows.extend({c: v for c, v in r.items() if v} for r in eq.values())
    return rows, ncols, coords


def member_lattice(sys: CongruenceSystem, degree: int, cumulative: bool = False):
    """HNF basis of the lattice of member tuples of degree ``degree`` (all
    degrees up to it with ``cumulative``), and its coordinates."""
    rows, ncols, coords = constraint_matrix(sys, degree, cumulative)
    nx = len(coords)
    sol = solve_sparse(rows, [0] * len(rows), ncols, want_kernel=True)
    return hermite_normal_form((k[:nx] for k in sol.kernel), nx), coords


def span_lattice(sys: CongruenceSystem, basis: Sequence[BasisClass], degree: int,
                 cumulative: bool = False):
    """HNF basis of the matching part of the Z-span of mu * phi_j."""
    coords = lattice_coordinates(sys, degree, cumulative)
    col = {c: i for i, c in enumerate(coords)}
    n = sys.theory.rank
    gens = []
    for b in basis:
        dj = sys.degrees[b.j]
        for mu in _monomials_upto(n, degree - dj, cumulative):
            mono = sys.theory.from_terms({mu: 1})
            vec = [0] * len(coords)
            for i, v in enumerate(sys.ordering):
                for e, c in (b.cls.values[v] * mono).terms.items():
                    vec[col[(i, e)]] = c
            gens.append(vec)
    return hermite_normal_form(gens, len(coords)), coords
