"""Truncated power series over a truncated Lazard ring, with the universal
formal group law F(x, y) = x + y + sum a_ij x^i y^j (a_ij = a_ji).

A :class:`TruncSeries` in u_1..u_n is stored as one sparse polynomial in the
joint variables (u_1..u_n, a_11, a_12, ...); the coefficient of a u-monomial is
the polynomial in the a_ij (an element of the truncated Lazard ring). Terms of
total u-degree above the truncation N are discarded.

Grading: |u_i| = 1 and a_ij has internal degree i+j-1 that is *subtracted*, so
a_ij x^i y^j has degree 1 and every Euler class is homogeneous of degree 1.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from ..errors import (NonzeroConstantTerm, NotDivisible, RankMismatch, TruncationMismatch,
                      ZeroDivisor)
from .poly import IntPoly, SparsePoly, _norm, divide_terms

# Symmetric free coefficients a_ij satisfy associativity of F exactly through
# u-degree 3 (the first Lazard relation 2*a22 = 3*a13 + 2*a11*a12 sits in degree 4).
MAX_TRUNCATION = 3


class LazardRing:
    """Z[a_ij : 1 <= i <= j, i+j <= N] with internal degrees i+j-1."""

    def __init__(self, truncation: int):
        if truncation < 1:
            raise ValueError("truncation must be >= 1")
        if truncation > MAX_TRUNCATION:
            raise ValueError(
                f"truncation {truncation} exceeds {MAX_TRUNCATION}: beyond u-degree 3 the "
                "a_ij satisfy Lazard relations that the free presentation does not impose")
        self.truncation = truncation
        self.generators: tuple[tuple[int, int], ...] = tuple(
            (i, s - i) for s in range(2, truncation + 1) for i in range(1, s // 2 + 1))
        self.index = {g: k for k, g in enumerate(self.generators)}

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def names(self) -> list[str]:
        return [f"a{i}{j}" for i, j in self.generators]

    def generator_index(self, i: int, j: int) -> int:
        return self.index[(min(i, j), max(i, j))]

    def internal_degree(self, a_exp: Sequence[int]) -> int:
        return sum(e * (i + j - 1) for e, (i, j) in zip(a_exp, self.generators))

    def monomials(self, internal_degree: int) -> list[tuple[int, ...]]:
        """All a-monomials of the given internal degree, in a fixed order."""
        out: list[tuple[int, ...]] = []
        weights = [i + j - 1 for i, j in self.generators]

        def rec(k, remaining, acc):
            if k == len(weights):
                if remaining == 0:
                    out.append(tuple(acc))
                return
            for e in range(remaining // weights[k], -1, -1):
                rec(k + 1, remaining - e * weights[k], acc + [e])

        if internal_degree >= 0:
            rec(0, internal_degree, [])
        return out


@lru_cache(maxsize=None)
def lazard_ring(truncation: int) -> LazardRing:
    return LazardRing(truncation)


class TruncSeries(SparsePoly):
    """Truncated series in u_1..u_rank with truncated-Lazard-ring coefficients."""

    __slots__ = ("rank", "truncation")
    var_prefix = "u"

    def __init__(self, rank: int, truncation: int, terms: Mapping | None = None):
        self.rank = rank
        self.truncation = truncation
        super().__init__(rank + lazard_ring(truncation).ngens, terms)

    def _params(self):
        return (self.nvars, self.rank, self.truncation)

    def _param_names(self):
        return ("nvars", "rank", "truncation")

    def _filter(self, terms):
        n, N = self.rank, self.truncation
        return {e: c for e, c in terms.items() if sum(e[:n]) <= N}

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            if other.rank != self.rank:
                raise RankMismatch(self.rank, other.rank)
            if other.truncation != self.truncation:
                raise TruncationMismatch(self.truncation, other.truncation)
            return other
        return super()._coerce(other)

    @property
    def ring(self) -> LazardRing:
        return lazard_ring(self.truncation)

    def key(self, exp):
        n = self.rank
        return (sum(exp[:n]), exp[:n], exp[n:])

    # constructors

    @classmethod
    def const(cls, rank: int, truncation: int, c=1) -> "TruncSeries":
        g = lazard_ring(truncation).ngens
        return cls(rank, truncation, {(0,) * (rank + g): c})

    @classmethod
    def u(cls, rank: int, truncation: int, i: int) -> "TruncSeries":
        g = lazard_ring(truncation).ngens
        exp = [0] * (rank + g)
        exp[i] = 1
        return cls(rank, truncation, {tuple(exp): 1})

    @classmethod
    def a(cls, rank: int, truncation: int, i: int, j: int) -> "TruncSeries":
        ring = lazard_ring(truncation)
        exp = [0] * (rank + ring.ngens)
        exp[rank + ring.generator_index(i, j)] = 1
        return cls(rank, truncation, {tuple(exp): 1})

    @classmethod
    def from_parts(cls, rank: int, truncation: int, parts: Mapping) -> "TruncSeries":
        """Build from ``{(u_exp, a_exp): c}``."""
        return cls(rank, truncation, {tuple(u) + tuple(a): c for (u, a), c in parts.items()})

    # structure

    def u_degree(self, exp) -> int:
        return sum(exp[: self.rank])

    def term_degree(self, exp) -> int:
        """Cohomological degree of a term (u-degree minus internal a-degree)."""
        return sum(exp[: self.rank]) - self.ring.internal_degree(exp[self.rank:])

    def is_homogeneous(self) -> bool:
        return len({self.term_degree(e) for e in self.terms}) <= 1

    def u_component(self, d: int) -> "TruncSeries":
        n = self.rank
        return self._new({e: c for e, c in self.terms.items() if sum(e[:n]) == d})

    def lowest_u_degree(self) -> int:
        n = self.rank
        return min((sum(e[:n]) for e in self.terms), default=-1)

    def coefficient_of_u(self, u_exp: Sequence[int]) -> IntPoly:
        """The truncated-Lazard-ring coefficient of u^u_exp (polynomial in the a_ij)."""
        n = self.rank
        u_exp = tuple(u_exp)
        return IntPoly(self.ring.ngens,
                       {e[n:]: c for e, c in self.terms.items() if e[:n] == u_exp})

    def constant_term(self):
        n = self.rank
        return self._new({e: c for e, c in self.terms.items() if sum(e[:n]) == 0})

    def variable_names(self) -> list[str]:
        return [f"u{i + 1}" for i in range(self.rank)] + self.ring.names()

    def _display_order(self):
        # ascending u-degree, as is customary for series
        n = self.rank
        return sorted(self.terms, key=lambda e: (sum(e[:n]), tuple(-x for x in e[:n]),
                                                 tuple(-x for x in e[n:])))

    def _factor_order(self):
        return list(range(self.rank, self.nvars)) + list(range(self.rank))

    def specialize(self, values: Mapping[tuple[int, int], int]) -> "TruncSeries":
        """Substitute integers for the a_ij (missing keys mean 0)."""
        n = self.rank
        gens = self.ring.generators
        vals = [values.get(g, values.get((g[1], g[0]), 0)) for g in gens]
        out: dict = {}
        for e, c in self.terms.items():
            factor = c
            for v, k in zip(vals, e[n:]):
                if k:
                    factor *= v ** k
            if factor:
                key = e[:n] + (0,) * len(gens)
                out[key] = out.get(key, 0) + factor
        return self._new({e: _norm(c) for e, c in out.items() if c})

    def to_u_poly(self) -> IntPoly:
        """Read an a-free series as an ordinary polynomial in u_1..u_rank."""
        n = self.rank
        if any(any(e[n:]) for e in self.terms):
            raise ValueError("series still involves Lazard coefficients")
        return IntPoly(n, {e[:n]: c for e, c in self.terms.items()})

    @classmethod
    def from_u_poly(cls, p: IntPoly, truncation: int) -> "TruncSeries":
        g = lazard_ring(truncation).ngens
        return cls(p.nvars, truncation, {e + (0,) * g: c for e, c in p.terms.items()})

    # division

    def exact_div(self, g, rational: bool = False) -> "TruncSeries":
        """Graded division up to the truncation.

        With g_l the lowest nonzero u-homogeneous part of g, solve
        q_{d-l} g_l = f_d - sum_{i>l} q_{d-i} g_i for d = l..N, each step a
        single-divisor polynomial division in the joint (u, a) variables.
        """
        g = self._coerce(g)
        if g.is_zero():
            raise ZeroDivisor()
        low = g.lowest_u_degree()
        g_low = g.u_component(low)
        residual = self
        q_terms: dict = {}
        for d in range(0, self.truncation + 1):
            part = residual.u_component(d)
            if part.is_zero():
                continue
            if d < low:
                raise NotDivisible(part, self._new(q_terms))
            qd, rd = divide_terms(part.terms, g_low.terms, self.key)
            if rd:
                raise NotDivisible(self._new(rd), self._new(q_terms))
            qpart = self._new(qd)
            if not rational and not qpart.is_integral():
                raise NotDivisible(self.zero(), qpart)
            for e, c in qd.items():
                q_terms[e] = _norm(q_terms.get(e, 0) + c)
            residual = residual - qpart * g
        return self._new(q_terms)


def _check_pair(x: TruncSeries, y: TruncSeries):
    if x.truncation != y.truncation:
        raise TruncationMismatch(x.truncation, y.truncation)


def fgl_sum(x: TruncSeries, y: TruncSeries) -> TruncSeries:
    """F(x, y) = x + y + sum_{i,j>=1, i+j<=N} a_ij x^i y^j, truncated at N."""
    _check_pair(x, y)
    N = x.truncation
    rank = x.rank
    xp = [x.one()]
    yp = [y.one()]
    for _ in range(N):
        xp.append(xp[-1] * x)
        yp.append(yp[-1] * y)
    out = x + y
    for i in range(1, N):
        for j in range(1, N - i + 1):
            if xp[i].is_zero() or yp[j].is_zero():
                continue
            out = out + TruncSeries.a(rank, N, i, j) * xp[i] * yp[j]
    return out


def fgl_inverse(x: TruncSeries) -> TruncSeries:
    """The formal inverse [-1](x): the unique i(x) with F(x, i(x)) = 0 mod degree N+1."""
    c = x.constant_term()
    if not c.is_zero():
        raise NonzeroConstantTerm(c.render())
    inv = -x
    # each pass fixes one more u-degree since dF/dy(0, 0) = 1
    for _ in range(x.truncation):
        inv = inv - fgl_sum(x, inv)
    return inv


def formal_multiple(x: TruncSeries, m: int) -> TruncSeries:
    """[m]_F(x) for an integer m."""
    if m == 0:
        return x.zero()
    if m < 0:
        return fgl_inverse(formal_multiple(x, -m))
    out = x
    for _ in range(m - 1):
        out = fgl_sum(out, x)
    return out


ADDITIVE: dict[tuple[int, int], int] = {}
MULTIPLICATIVE: dict[tuple[int, int], int] = {(1, 1): -1}
