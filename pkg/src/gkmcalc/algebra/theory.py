"""The three coefficient theories and their Euler classes.

* ``H``  -- Z[y_1..y_n]; the Euler class of a character m is sum m_i y_i.
* ``K``  -- R(T) = Z[zeta_i^{+-1}]; the Euler class is 1 - zeta^m.
* ``MU`` -- truncated series over the truncated Lazard ring; the Euler class is
  the formal sum [m_1](u_1) +_F ... +_F [m_n](u_n).
"""

from __future__ import annotations

from typing import Sequence

from .lazard import MAX_TRUNCATION, TruncSeries, fgl_sum, formal_multiple, lazard_ring
from .poly import IntPoly, LaurentPoly, parse_poly

DEFAULT_TRUNCATION = 3


class Theory:
    """Coefficient ring of one theory at a fixed torus rank."""

    name = "?"
    rational = False

    def __init__(self, rank: int):
        if rank < 0:
            raise ValueError("torus rank must be non-negative")
        self.rank = rank

    @property
    def label(self) -> str:
        return self.name

    def constant(self, c=1):
        raise NotImplementedError

    def zero(self):
        return self.constant(0)

    def one(self):
        return self.constant(1)

    def from_terms(self, terms):
        raise NotImplementedError

    def euler(self, weights: Sequence[int]):
        raise NotImplementedError

    def exact_div(self, f, g):
        return f.exact_div(g, rational=self.rational)

    def parse(self, text: str):
        raise NotImplementedError

    def render(self, x) -> str:
        return x.render()

    def same(self, other: "Theory") -> bool:
        return type(self) is type(other) and self._key() == other._key()

    def _key(self):
        return (self.rank, self.rational)

    def __eq__(self, other):
        return isinstance(other, Theory) and self.same(other)

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return f"{type(self).__name__}(rank={self.rank})"


def _check_weights(weights, rank):
    w = [int(x) for x in weights]
    if len(w) != rank or any(int(x) != x for x in weights):
        raise ValueError(f"expected {rank} integer weights, got {list(weights)}")
    return w


class Cohomology(Theory):
    """Borel equivariant cohomology, optionally with rational coefficients."""

    name = "H"

    def __init__(self, rank: int, rational: bool = False):
        super().__init__(rank)
        self.rational = rational

    @property
    def label(self) -> str:
        return "H(Q)" if self.rational else "H"

    def constant(self, c=1):
        return IntPoly.constant(self.rank, c)

    def variable(self, i: int):
        return IntPoly.variable(self.rank, i)

    def from_terms(self, terms):
        return IntPoly(self.rank, terms)

    def euler(self, weights):
        w = _check_weights(weights, self.rank)
        return IntPoly(self.rank, {tuple(int(i == k) for i in range(self.rank)): m
                                   for k, m in enumerate(w) if m})

    def parse(self, text):
        return parse_poly(text, IntPoly, nvars=self.rank)


class KTheory(Theory):
    """Equivariant K-theory in degree zero, i.e. the representation ring."""

    name = "K"

    def constant(self, c=1):
        return LaurentPoly.constant(self.rank, c)

    def from_terms(self, terms):
        return LaurentPoly(self.rank, terms)

    def euler(self, weights):
        w = _check_weights(weights, self.rank)
        if not any(w):
            return self.zero()
        return LaurentPoly(self.rank, {(0,) * self.rank: 1, tuple(w): -1})

    def parse(self, text):
        return parse_poly(text, LaurentPoly, nvars=self.rank)


class Cobordism(Theory):
    """Complex cobordism truncated at total u-degree N."""

    name = "MU"

    def __init__(self, rank: int, truncation: int = DEFAULT_TRUNCATION):
        super().__init__(rank)
        if not 1 <= truncation <= MAX_TRUNCATION:
            raise ValueError(f"truncation must lie in 1..{MAX_TRUNCATION}, got {truncation}")
        self.truncation = truncation

    @property
    def label(self) -> str:
        return f"MU({self.truncation})"

    def _key(self):
        return (self.rank, self.truncation)

    def constant(self, c=1):
        return TruncSeries.const(self.rank, self.truncation, c)

    def variable(self, i: int):
        return TruncSeries.u(self.rank, self.truncation, i)

    def from_terms(self, terms):
        return TruncSeries(self.rank, self.truncation, terms)

    @property
    def ring(self):
        return lazard_ring(self.truncation)

    def euler(self, weights):
        w = _check_weights(weights, self.rank)
        out = None
        for i, m in enumerate(w):
            if not m:
                continue
            term = formal_multiple(self.variable(i), m)
            out = term if out is None else fgl_sum(out, term)
        return self.zero() if out is None else out

    def parse(self, text):
        names = [f"u{i + 1}" for i in range(self.rank)] + self.ring.names()
        p = parse_poly(text, IntPoly, names=names)
        return TruncSeries(self.rank, self.truncation, p.terms)

    def __repr__(self):
        return f"Cobordism(rank={self.rank}, truncation={self.truncation})"


def make_theory(name: str, rank: int, truncation: int = DEFAULT_TRUNCATION,
                rational: bool = False) -> Theory:
    key = name.upper()
    if rational and key != "H":
        raise ValueError("rational coefficients are only supported for H")
    if key == "H":
        return Cohomology(rank, rational=rational)
    if key == "K":
        return KTheory(rank)
    if key == "MU":
        return Cobordism(rank, truncation)
    raise ValueError(f"unknown theory {name!r} (expected H, K or MU)")


def euler_of_character(weights: Sequence[int], theory, truncation: int = DEFAULT_TRUNCATION):
    """Euler class of the line with integral character ``weights``.

    ``theory`` is a :class:`Theory` or one of the names ``"H"``, ``"K"``, ``"MU"``.
    """
    if isinstance(theory, str):
        theory = make_theory(theory, len(weights), truncation)
    return theory.euler(weights)
