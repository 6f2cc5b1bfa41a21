"""Sparse exact polynomials: integer (or rational) multivariate polynomials and
Laurent polynomials, with single-divisor exact division.

Terms are stored as ``{exponent tuple: coefficient}`` with no zero coefficients.
Coefficients are Python ints; rational coefficients (``Fraction``) are allowed so
that the same carrier serves the rational-coefficient mode. Monomials are ordered
graded-lexicographically everywhere (division remainders depend on it).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import NotDivisible, RankMismatch, ZeroDivisor

Exponent = tuple[int, ...]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _div_coeff(a, b):
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _norm(Fraction(a) / b)


def grlex_key(exp: Exponent):
    return (sum(exp), exp)


class SparsePoly:
    """Shared ring arithmetic for the sparse carriers."""

    __slots__ = ("nvars", "terms")
    var_prefix = "x"
    allow_negative = False

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = nvars
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            if not self.allow_negative and min(exp, default=0) < 0:
                raise ValueError(f"negative exponent {exp} in {type(self).__name__}")
            if c:
                clean[exp] = _norm(c)
        self.terms = self._filter(clean)

    # construction helpers

    def _params(self) -> tuple:
        return (self.nvars,)

    def _filter(self, terms: dict) -> dict:
        return terms

    def _new(self, terms: dict):
        obj = object.__new__(type(self))
        for name, val in zip(self._param_names(), self._params()):
            object.__setattr__(obj, name, val)
        obj.terms = self._filter({e: c for e, c in terms.items() if c})
        return obj

    def _param_names(self) -> tuple:
        return ("nvars",)

    @classmethod
    def constant(cls, nvars: int, c=1, **kw):
        return cls(nvars, {(0,) * nvars: c}, **kw)

    @classmethod
    def variable(cls, nvars: int, i: int, power: int = 1, **kw):
        exp = [0] * nvars
        exp[i] = power
        return cls(nvars, {tuple(exp): 1}, **kw)

    @classmethod
    def monomial(cls, nvars: int, exp: Sequence[int], c=1, **kw):
        return cls(nvars, {tuple(exp): c}, **kw)

    def zero(self):
        return self._new({})

    def one(self):
        return self._new({(0,) * self.nvars: 1})

    # ring structure

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            if type(other) is not type(self) or other._params() != self._params():
                raise RankMismatch(self._params(), other._params())
            return other
        if isinstance(other, (int, Fraction)):
            return self._new({(0,) * self.nvars: other} if other else {})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._new({e: _norm(c * other) for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._new({e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (type(self) is type(other) and self._params() == other._params()
                and self.terms == other.terms)

    def __hash__(self):
        return hash((type(self).__name__, self._params(), frozenset(self.terms.items())))

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def key(self, exp: Exponent):
        return grlex_key(exp)

    def leading_term(self) -> tuple[Exponent, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=self.key)
        return e, self.terms[e]

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), 0)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_component(self, d: int):
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def support(self) -> list[Exponent]:
        return sorted(self.terms, key=self.key, reverse=True)

    def map_coefficients(self, f):
        return self._new({e: _norm(f(c)) for e, c in self.terms.items()})

    # text

    def variable_names(self) -> list[str]:
        return [f"{self.var_prefix}{i + 1}" for i in range(self.nvars)]

    def _display_order(self) -> list[Exponent]:
        return self.support()

    def _factor_order(self) -> Sequence[int]:
        return range(self.nvars)

    def render(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else self.variable_names()
        if not self.terms:
            return "0"
        order = self._factor_order()
        pieces = []
        for exp in self._display_order():
            c = self.terms[exp]
            mono = "*".join(
                names[i] if exp[i] == 1 else f"{names[i]}^{exp[i]}" for i in order if exp[i])
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"{type(self).__name__}({self.render()!r})"


def divide_terms(f: Mapping, g: Mapping, key) -> tuple[dict, dict]:
    """Multivariate division of ``f`` by the single polynomial ``g`` over Q.

    A single polynomial is a Groebner basis of the ideal it generates, so the
    remainder is zero exactly when ``g`` divides ``f`` over Q.
    """
    if not g:
        raise ZeroDivisor()
    lt = max(g, key=key)
    lc = g[lt]
    p = dict(f)
    q: dict = {}
    r: dict = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        shift = tuple(a - b for a, b in zip(m, lt))
        if min(shift, default=0) < 0:
            r[m] = c
            del p[m]
            continue
        t = _div_coeff(c, lc)
        q[shift] = _norm(q.get(shift, 0) + t)
        for ge, gc in g.items():
            e = tuple(a + b for a, b in zip(shift, ge))
            v = p.get(e, 0) - t * gc
            if v:
                p[e] = _norm(v)
            else:
                p.pop(e, None)
    return {e: c for e, c in q.items() if c}, r


class IntPoly(SparsePoly):
    """Element of Z[y_1..y_n] (rational coefficients allowed for Q[y])."""

    __slots__ = ()
    var_prefix = "y"

    def divmod(self, g: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        g = self._coerce(g)
        q, r = divide_terms(self.terms, g.terms, self.key)
        return self._new(q), self._new(r)

    def exact_div(self, g, rational: bool = False) -> "IntPoly":
        """Quotient f/g; over Z unless ``rational``. Raises NotDivisible."""
        g = self._coerce(g)
        if g.is_zero():
            raise ZeroDivisor()
        q, r = self.divmod(g)
        if r:
            raise NotDivisible(r, q)
        if not rational and self.is_integral() and not q.is_integral():
            raise NotDivisible(r, q)
        return q


class LaurentPoly(SparsePoly):
    """Element of Z[zeta_1^{+-1}..zeta_n^{+-1}] (the representation ring R(T))."""

    __slots__ = ()
    var_prefix = "z"
    allow_negative = True

    def min_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def shifted(self, shift: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial zeta^shift."""
        return self._new({tuple(a + b for a, b in zip(e, shift)): c
                          for e, c in self.terms.items()})

    def normalized(self) -> tuple["LaurentPoly", Exponent]:
        """Return (p, m) with p = self * zeta^-m a polynomial not divisible by any variable."""
        m = self.min_exponents()
        return self.shifted([-x for x in m]), m

    def exact_div(self, g, rational: bool = False) -> "LaurentPoly":
        g = self._coerce(g)
        if g.is_zero():
            raise ZeroDivisor()
        if self.is_zero():
            return self.zero()
        fn, fm = self.normalized()
        gn, gm = g.normalized()
        q, r = divide_terms(fn.terms, gn.terms, self.key)
        shift = [a - b for a, b in zip(fm, gm)]
        if r:
            raise NotDivisible(self._new(r).shifted(fm), self._new(q).shifted(shift))
        quot = self._new(q).shifted(shift)
        if not rational and self.is_integral() and not quot.is_integral():
            raise NotDivisible(self.zero(), quot)
        return quot


def exact_div(f, g, rational: bool = False):
    """Exact quotient in the carrier ring of ``f``; raises NotDivisible."""
    return f.exact_div(g, rational=rational)


def divides(g, f, rational: bool = False) -> bool:
    try:
        f.exact_div(g, rational=rational)
    except NotDivisible:
        return False
    return True


_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z_]*\d+)(?:\^(-?\d+))?$")
_COEFF_RE = re.compile(r"^\d+(?:/\d+)?$")


def _split_terms(text: str) -> list[tuple[int, str]]:
    out = []
    sign, buf, prev = 1, "", ""
    for ch in text:
        if ch in "+-" and prev != "^":
            if buf.strip():
                out.append((sign, buf.strip()))
                sign = 1
            sign = -sign if ch == "-" else sign
            buf = ""
        else:
            buf += ch
        if not ch.isspace():
            prev = ch
    if buf.strip():
        out.append((sign, buf.strip()))
    return out


def parse_terms(text: str, names: Sequence[str]) -> dict[Exponent, object]:
    """Parse canonical text such as ``"3*y1^2*y2 - y3"`` or ``"1 - z1^-2*z3"``."""
    index = {n: i for i, n in enumerate(names)}
    terms: dict = {}
    if text.strip() in ("", "0"):
        return terms
    for sign, body in _split_terms(text):
        coeff = Fraction(1)
        exp = [0] * len(names)
        for factor in body.split("*"):
            factor = factor.strip()
            if _COEFF_RE.match(factor):
                coeff *= Fraction(factor)
                continue
            m = _FACTOR_RE.match(factor)
            if not m or m.group(1) not in index:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            exp[index[m.group(1)]] += int(m.group(2) or 1)
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + sign * coeff
    return {e: _norm(c) for e, c in terms.items() if c}


def parse_poly(text: str, cls=IntPoly, nvars: int | None = None,
               names: Iterable[str] | None = None):
    if names is None:
        if nvars is None:
            raise ValueError("need nvars or names")
        names = [f"{cls.var_prefix}{i + 1}" for i in range(nvars)]
    names = list(names)
    return cls(len(names), parse_terms(text, names))
