"""Ordered simple graphs on {1..n} encoded as edge bitmasks.

Bit ``i`` of a mask stands for the i-th unordered pair {u, v}, u < v, in
lexicographic order: (1,2), (1,3), ..., (1,n), (2,3), ...  so pair (1,2) is
bit 0 and pair (n-1,n) is bit C(n,2)-1.  Masks are confined to one 64-bit
word, which caps graphs at 11 vertices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

__all__ = [
    "EdgeSet",
    "GraphFormatError",
    "MAX_VERTICES",
    "OrderedGraph",
    "complete_graph",
    "empty_graph",
    "enumerate_graphs",
    "graph_count_log2",
    "load_graph",
    "pair_from_index",
    "pair_index",
    "parse_graph",
    "partition_range",
    "render_graph",
    "render_graph_json",
]

MASK_BITS = 64
MAX_VERTICES = 11  # C(11,2) = 55 <= 64 < C(12,2)


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _check_n(n: int):
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(
            f"vertex count {n} outside 1..{MAX_VERTICES} "
            f"(C(n,2) edge bits must fit in a {MASK_BITS}-bit mask)")


def graph_count_log2(n: int) -> int:
    return comb(n, 2)


def pair_index(u: int, v: int, n: int) -> int:
    if u > v:
        u, v = v, u
    if not (1 <= u < v <= n):
        raise ValueError(f"({u}, {v}) is not a pair of distinct vertices of 1..{n}")
    return (u - 1) * n - (u - 1) * u // 2 + (v - u - 1)


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1))


def pair_from_index(i: int, n: int) -> tuple[int, int]:
    return _pairs(n)[i]


@dataclass(frozen=True)
class EdgeSet:
    """A set of unordered vertex pairs of {1..n}, as a bitmask."""

    n: int
    mask: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.mask < 1 << comb(self.n, 2):
            raise ValueError(f"mask {self.mask:#x} has bits beyond C({self.n},2)")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]):
        mask = 0
        for u, v in pairs:
            mask |= 1 << pair_index(u, v, n)
        return cls(n, mask)

    def pairs(self) -> list[tuple[int, int]]:
        """Pairs in ascending bit order."""
        return [p for i, p in enumerate(_pairs(self.n)) if self.mask >> i & 1]

    def __len__(self):
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.pairs())

    def __contains__(self, pair):
        u, v = pair
        if u == v:
            return False
        return bool(self.mask >> pair_index(u, v, self.n) & 1)

    def _same_n(self, other: EdgeSet):
        if self.n != other.n:
            raise ValueError(f"edge sets over {self.n} and {other.n} vertices")

    def __and__(self, other: EdgeSet):
        self._same_n(other)
        return EdgeSet(self.n, self.mask & other.mask)

    def __or__(self, other: EdgeSet):
        self._same_n(other)
        return EdgeSet(self.n, self.mask | other.mask)

    def issubset(self, other: EdgeSet) -> bool:
        self._same_n(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: EdgeSet) -> bool:
        self._same_n(other)
        return self.mask & other.mask == 0


@dataclass(frozen=True)
class OrderedGraph(EdgeSet):
    """A simple graph whose vertices 1..n carry their natural order."""

    def adjacent(self, u: int, v: int) -> bool:
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            raise ValueError(f"vertex outside 1..{self.n}: ({u}, {v})")
        if u == v:
            return False
        return bool(self.mask >> pair_index(u, v, self.n) & 1)

    def neighbors(self, u: int) -> list[int]:
        return [v for v in range(1, self.n + 1) if self.adjacent(u, v)]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return self.pairs()


def complete_graph(n: int) -> OrderedGraph:
    _check_n(n)
    return OrderedGraph(n, (1 << comb(n, 2)) - 1)


def empty_graph(n: int) -> OrderedGraph:
    return OrderedGraph(n, 0)


def _graph_from_edge_list(n, edges, where=lambda i: None) -> OrderedGraph:
    try:
        _check_n(n)
    except ValueError as e:
        raise GraphFormatError(str(e), where(-1)) from None
    mask = 0
    for i, (u, v) in enumerate(edges):
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex out of range 1..{n}: {u} {v}", where(i))
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", where(i))
        bit = 1 << pair_index(u, v, n)
        if mask & bit:
            raise GraphFormatError(f"duplicate edge {min(u, v)} {max(u, v)}", where(i))
        mask |= bit
    return OrderedGraph(n, mask)


def _parse_json_graph(text: str) -> OrderedGraph:
    try:
        data = json.loads(text)
        n = data["n"]
        edges = [tuple(e) for e in data["edges"]]
    except (ValueError, KeyError, TypeError) as e:
        raise GraphFormatError(f"bad JSON graph: {e}") from None
    if not isinstance(n, int) or any(
            len(e) != 2 or not all(isinstance(x, int) for x in e) for e in edges):
        raise GraphFormatError("bad JSON graph: n and edge endpoints must be integers")
    return _graph_from_edge_list(n, edges)


def parse_graph(text: str) -> OrderedGraph:
    """Parse the line format (``n`` then one ``u v`` per line) or JSON.

    JSON input looks like ``{"n": 3, "edges": [[1, 2], [2, 3]]}``.
    """
    if text.lstrip().startswith("{"):
        return _parse_json_graph(text)
    lines = text.splitlines()
    numbered = [(i, ln.strip()) for i, ln in enumerate(lines, start=1) if ln.strip()]
    if not numbered:
        raise GraphFormatError("empty graph file", 1)
    first_no, first = numbered[0]
    if not first.isdigit():
        raise GraphFormatError(f"expected vertex count, got {first!r}", first_no)
    n = int(first)
    edges, line_nos = [], []
    for no, ln in numbered[1:]:
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"expected 'u v', got {ln!r}", no)
        edges.append((int(parts[0]), int(parts[1])))
        line_nos.append(no)
    return _graph_from_edge_list(
        n, edges, lambda i: first_no if i < 0 else line_nos[i])


def load_graph(path) -> OrderedGraph:
    with open(path, encoding="utf-8") as f:
        return parse_graph(f.read())


def render_graph(g: OrderedGraph) -> str:
    return "".join([f"{g.n}\n"] + [f"{u} {v}\n" for u, v in g.edges])


def render_graph_json(g: OrderedGraph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})


def partition_range(total: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(total)`` into ``parts`` contiguous, near-equal slices."""
    if parts < 1:
        raise ValueError("parts must be positive")
    q, r = divmod(total, parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + q + (i < r)
        out.append((start, stop))
        start = stop
    return out


def enumerate_graphs(n: int, start: int = 0, stop: int | None = None) -> Iterator[OrderedGraph]:
    """Every graph on 1..n with mask in ``[start, stop)``, ascending by mask."""
    _check_n(n)
    total = 1 << comb(n, 2)
    stop = total if stop is None else min(stop, total)
    for mask in range(max(start, 0), stop):
        yield OrderedGraph(n, mask)
