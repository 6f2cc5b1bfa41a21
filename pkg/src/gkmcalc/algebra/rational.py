"""Exact rational vectors (axial function values)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class RationalVector:
    """A vector in Q^n stored as integer numerators over one positive denominator.

    The representation is reduced: ``gcd(numerators..., denominator) == 1``, so
    ``denominator`` is the lcm of the reduced component denominators.
    """

    __slots__ = ("numerators", "denominator")

    def __init__(self, components: Iterable, denominator: int = 1):
        comps = [Fraction(c) for c in components]
        den = 1
        for c in comps:
            den = _lcm(den, c.denominator)
        den *= denominator
        nums = [int(c * den) for c in comps]
        self._set(nums, den)

    def _set(self, nums, den):
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = gcd(den, *nums)
        if g == 1:
            self.numerators = tuple(nums)
            self.denominator = den
        else:
            self.numerators = tuple([x // g for x in nums])
            self.denominator = den // g

    @classmethod
    def from_integral(cls, nums: Iterable[int], den: int = 1) -> "RationalVector":
        v = cls.__new__(cls)
        v._set(list(nums), den)
        return v

    @classmethod
    def parse(cls, items: Iterable[str | int]) -> "RationalVector":
        return cls(Fraction(str(x)) for x in items)

    @property
    def rank(self) -> int:
        return len(self.numerators)

    @property
    def components(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.denominator) for x in self.numerators)

    def is_integral(self) -> bool:
        return self.denominator == 1

    def is_zero(self) -> bool:
        return not any(self.numerators)

    def integral_scaling(self) -> tuple[int, ...]:
        """The vector times its denominator (the least integral positive multiple)."""
        return self.numerators

    def scaled(self, factor) -> "RationalVector":
        if isinstance(factor, int):
            p, q = factor, 1
        else:
            f = Fraction(factor)
            p, q = f.numerator, f.denominator
        return RationalVector.from_integral([x * p for x in self.numerators],
                                            self.denominator * q)

    def __neg__(self):
        v = RationalVector.__new__(RationalVector)
        v.numerators = tuple([-x for x in self.numerators])
        v.denominator = self.denominator
        return v

    def _combine(self, other: "RationalVector", sign: int):
        self._check(other)
        d1, d2 = self.denominator, other.denominator
        return RationalVector.from_integral(
            [a * d2 + sign * b * d1 for a, b in zip(self.numerators, other.numerators)], d1 * d2)

    def __add__(self, other: "RationalVector"):
        return self._combine(other, 1)

    def __sub__(self, other: "RationalVector"):
        return self._combine(other, -1)

    def _check(self, other):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch {self.rank} vs {other.rank}")

    def ratio_to(self, other: "RationalVector") -> Fraction | None:
        """Return lam with ``self == lam * other`` or None. ``other`` must be nonzero."""
        self._check(other)
        piv = next((i for i, x in enumerate(other.numerators) if x), None)
        if piv is None:
            raise ValueError("ratio to the zero vector")
        lam = Fraction(self.numerators[piv] * other.denominator,
                       other.numerators[piv] * self.denominator)
        # cross-multiplied exact check: self.num * other.den == lam * other.num * self.den
        p, q = lam.numerator, lam.denominator
        for a, b in zip(self.numerators, other.numerators):
            if a * other.denominator * q != p * b * self.denominator:
                return None
        return lam

    def is_parallel(self, other: "RationalVector") -> bool:
        """Linear dependence of the pair (zero is parallel to everything)."""
        a, b = self.numerators, other.numerators
        n = len(a)
        return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))

    def __eq__(self, other):
        if not isinstance(other, RationalVector):
            return NotImplemented
        return self.numerators == other.numerators and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerators, self.denominator))

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.components]

    def __repr__(self):
        return f"RationalVector([{', '.join(self.to_strings())}])"
