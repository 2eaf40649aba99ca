"""Exact frequency and rate of a derangement, theta profiles, extremal cases.

For a derangement w of {1..n} let U(w) be the vertices that are not the
minimum of their cycle.  The requirement sets E_{w,t}, t in U(w), are pairwise
disjoint and cover the requirements coming from cycle minima, so a graph
admits w exactly when it picks a nonempty subset of each of them:

    f(w) = 2^(C(n,2) - sum|rho|) * prod (2^|rho_w(t)| - 1)
    r(w) = prod (1 - 2^-|rho_w(t)|)

All arithmetic is on Python integers; rates are dyadic and kept as
``numerator / 2**exponent``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from .perm import Derangement, Permutation, as_derangement, canopy

__all__ = [
    "ExactRate",
    "ThetaOrder",
    "ThetaProfile",
    "compare_theta",
    "decreasing_arrangement_rate",
    "frequency",
    "increasing_arrangement_rate",
    "max_rate_derangement",
    "min_rate_derangement",
    "rate",
    "rho_sizes",
    "theta",
]


@dataclass(frozen=True)
class ExactRate:
    """The dyadic rational ``numerator / 2**denominator_log2``, normalized."""

    numerator: int
    denominator_log2: int = 0

    def __post_init__(self):
        num, q = self.numerator, self.denominator_log2
        if num < 0 or q < 0:
            raise ValueError("numerator and exponent must be non-negative")
        if num == 0:
            q = 0
        else:
            shift = min((num & -num).bit_length() - 1, q)
            num >>= shift
            q -= shift
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator_log2", q)

    @classmethod
    def from_fraction(cls, value: Fraction):
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, den.bit_length() - 1)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.denominator_log2)

    def __eq__(self, other):
        if isinstance(other, ExactRate):
            return (self.numerator, self.denominator_log2) == (other.numerator, other.denominator_log2)
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def _cmp_value(self, other):
        if isinstance(other, ExactRate):
            return other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        return NotImplemented

    def __lt__(self, other):
        o = self._cmp_value(other)
        return o if o is NotImplemented else self.as_fraction() < o

    def __le__(self, other):
        o = self._cmp_value(other)
        return o if o is NotImplemented else self.as_fraction() <= o

    def __gt__(self, other):
        o = self._cmp_value(other)
        return o if o is NotImplemented else self.as_fraction() > o

    def __ge__(self, other):
        o = self._cmp_value(other)
        return o if o is NotImplemented else self.as_fraction() >= o

    def __mul__(self, other: ExactRate):
        return ExactRate(self.numerator * other.numerator,
                         self.denominator_log2 + other.denominator_log2)

    def fraction_str(self) -> str:
        return f"{self.numerator}/2^{self.denominator_log2}"

    def decimal_str(self) -> str:
        """Exact finite decimal expansion, e.g. ``0.08203125``."""
        q = self.denominator_log2
        if q == 0:
            return str(self.numerator)
        digits = str(self.numerator * 5 ** q).rjust(q + 1, "0")
        return f"{digits[:-q]}.{digits[-q:]}"

    def __str__(self):
        return self.decimal_str()

    def __float__(self):
        return float(self.as_fraction())


def rho_sizes(w: Permutation) -> list[int]:
    """|rho_w(t)| for each t in U(w), in increasing order of t."""
    c = canopy(w)
    return [len(c.rho(t)) for t in range(1, w.n + 1) if not w.is_cycle_min(t)]


def frequency(w: Derangement) -> int:
    """Number of graphs on {1..n} whose derangement set contains ``w``."""
    w = as_derangement(w)
    sizes = rho_sizes(w)
    f = 1 << (comb(w.n, 2) - sum(sizes))
    for s in sizes:
        f *= (1 << s) - 1
    return f


def rate(w: Derangement) -> ExactRate:
    w = as_derangement(w)
    r = ExactRate(1)
    for s in rho_sizes(w):
        r = r * ExactRate((1 << s) - 1, s)
    return r


class ThetaOrder(enum.Enum):
    EQUAL = "equal"
    LESS_OR_EQUAL = "less_or_equal"
    GREATER_OR_EQUAL = "greater_or_equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class ThetaProfile:
    """Sorted rho sizes over U(w), tagged with the cycle count k of w."""

    k: int
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if list(sizes) != sorted(sizes) or any(s < 1 for s in sizes):
            raise ValueError(f"theta sizes must be positive and non-decreasing: {sizes}")

    def __str__(self):
        return "(" + ",".join(map(str, self.sizes)) + ")"


def theta(w: Derangement) -> ThetaProfile:
    w = as_derangement(w)
    return ThetaProfile(w.num_cycles, tuple(sorted(rho_sizes(w))))


def compare_theta(a: ThetaProfile, b: ThetaProfile) -> ThetaOrder:
    """Componentwise (cartesian) comparison of profiles from the same D^k."""
    if a.k != b.k or len(a.sizes) != len(b.sizes):
        raise ValueError(
            f"theta profiles are only comparable within one D^k(V): "
            f"k={a.k}, len={len(a.sizes)} vs k={b.k}, len={len(b.sizes)}")
    if a.sizes == b.sizes:
        return ThetaOrder.EQUAL
    if all(x <= y for x, y in zip(a.sizes, b.sizes)):
        return ThetaOrder.LESS_OR_EQUAL
    if all(x >= y for x, y in zip(a.sizes, b.sizes)):
        return ThetaOrder.GREATER_OR_EQUAL
    return ThetaOrder.INCOMPARABLE


def min_rate_derangement(n: int) -> Derangement:
    """The single cycle (1 n n-1 ... 3 2)."""
    if n < 2:
        raise ValueError("derangements need n >= 2")
    return Derangement.from_cycles([[1, *range(n, 1, -1)]], n)


def max_rate_derangement(n: int) -> Derangement:
    """The single cycle (1 2 3 ... n)."""
    if n < 2:
        raise ValueError("derangements need n >= 2")
    return Derangement.from_cycles([list(range(1, n + 1))], n)


def decreasing_arrangement_rate(num_non_min: int) -> ExactRate:
    """Rate of a derangement whose cycles all decrease after their minimum."""
    if num_non_min < 0:
        raise ValueError("num_non_min must be non-negative")
    return ExactRate(1, num_non_min)


def increasing_arrangement_rate(cycle_lengths: Iterable[int]) -> ExactRate:
    """Rate of a derangement whose cycles are all increasing, given their lengths."""
    r = ExactRate(1)
    for c in cycle_lengths:
        if c < 2:
            raise ValueError(f"cycle length {c} < 2")
        for k in range(1, c):
            r = r * ExactRate((1 << k) - 1, k)
    return r
