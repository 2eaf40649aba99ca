"""Derangement sets of ordered graphs and the edge requirements behind them.

A permutation w belongs to D(G) when, for every vertex t, lambda_w(t) is
adjacent in G to at least one vertex of rho_w(t).  The criterion is evaluated
on arbitrary permutations; a fixed point t has lambda = t and rho = {t}, asks
for a loop, and is therefore always rejected.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .graph import EdgeSet, OrderedGraph
from .perm import Derangement, Permutation, canopy, enumerate_derangements

__all__ = [
    "DEFAULT_DSET_LIMIT",
    "EnumerationLimitError",
    "Failure",
    "MembershipReport",
    "NonMinSet",
    "SizeMismatchError",
    "check_membership",
    "derangement_set",
    "edge_requirement",
    "membership_via_requirements",
    "non_min_elements",
]

DEFAULT_DSET_LIMIT = 8


class SizeMismatchError(ValueError):
    pass


class EnumerationLimitError(ValueError):
    pass


class Failure(NamedTuple):
    t: int
    lam: int
    rho: frozenset[int]


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    failures: tuple[Failure, ...] = ()


@dataclass(frozen=True)
class NonMinSet:
    perm: Derangement
    elements: frozenset[int]

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, t):
        return t in self.elements


def _check_sizes(g: OrderedGraph, w: Permutation):
    if g.n != w.n:
        raise SizeMismatchError(
            f"permutation of 1..{w.n} does not match graph on {g.n} vertices")


def check_membership(g: OrderedGraph, w: Permutation) -> MembershipReport:
    _check_sizes(g, w)
    c = canopy(w)
    failures = []
    for t in range(1, w.n + 1):
        lam, rho = c.lam(t), c.rho(t)
        if not any(g.adjacent(lam, s) for s in rho):
            failures.append(Failure(t, lam, rho))
    return MembershipReport(not failures, tuple(failures))


def edge_requirement(w: Permutation, t: int) -> EdgeSet:
    """Pairs {lambda_w(t), s} for s in rho_w(t), minus the loop {t, t}."""
    if not 1 <= t <= w.n:
        raise ValueError(f"vertex {t} outside 1..{w.n}")
    c = canopy(w)
    lam = c.lam(t)
    return EdgeSet.from_pairs(w.n, ((lam, s) for s in c.rho(t) if s != lam))


def non_min_elements(w: Derangement) -> NonMinSet:
    return NonMinSet(w, frozenset(t for t in range(1, w.n + 1) if not w.is_cycle_min(t)))


def membership_via_requirements(g: OrderedGraph, w: Permutation) -> bool:
    """Same verdict as check_membership, phrased as 'G hits every E_{w,t}'."""
    _check_sizes(g, w)
    return all(g.mask & edge_requirement(w, t).mask for t in range(1, w.n + 1))


def derangement_set(g: OrderedGraph, limit: int = DEFAULT_DSET_LIMIT,
                    force: bool = False) -> list[Derangement]:
    """Members of D(G), lexicographic in one-line notation."""
    if g.n > limit and not force:
        raise EnumerationLimitError(
            f"n={g.n} exceeds the enumeration limit {limit}; pass force=True")
    return [w for w in enumerate_derangements(g.n) if check_membership(g, w).member]
