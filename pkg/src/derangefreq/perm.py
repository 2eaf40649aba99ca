"""Permutations of {1..n} in cycle form, derangements, and the canopy maps.

Vertices are the integers 1..n with their natural order.  A permutation is
stored by its images (``images[t - 1] == w(t)``); the cycle decomposition is
derived on demand and always reported in standard form: each cycle rotated to
start at its minimum, cycles sorted by their minima.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

__all__ = [
    "CanopyData",
    "CycleFormatError",
    "Derangement",
    "FixedPointError",
    "Permutation",
    "as_derangement",
    "canopy",
    "enumerate_derangements",
    "enumerate_derangements_with_k_cycles",
    "parse_cycle_form",
    "relabel_cycles",
    "standard_cycle_form",
    "tokenize_cycles",
]

COMPACT_MAX_N = 9


class CycleFormatError(ValueError):
    """Malformed cycle notation.  ``column`` is 1-based, or None."""

    def __init__(self, message: str, column: int | None = None):
        self.column = column
        if column is not None:
            message = f"column {column}: {message}"
        super().__init__(message)


class FixedPointError(ValueError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is a fixed point")


@dataclass(frozen=True, eq=False)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n < 1:
            raise ValueError("a permutation needs at least one element")
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{n}")

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int):
        images = list(range(1, n + 1))
        seen = set()
        for cycle in cycles:
            for x in cycle:
                if not 1 <= x <= n:
                    raise ValueError(f"element {x} outside 1..{n}")
                if x in seen:
                    raise ValueError(f"element {x} repeated")
                seen.add(x)
            for a, b in zip(cycle, itertools.chain(cycle[1:], cycle[:1])):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def identity(cls, n: int):
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, t: int) -> int:
        return self.images[t - 1]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other: Permutation):
        return self.images < other.images

    def __repr__(self):
        return f"{type(self).__name__}({standard_cycle_form(self) or '()'}, n={self.n})"

    def __str__(self):
        return standard_cycle_form(self)

    @cached_property
    def inverse_images(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for t, wt in enumerate(self.images, start=1):
            inv[wt - 1] = t
        return tuple(inv)

    def inverse(self, t: int) -> int:
        return self.inverse_images[t - 1]

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """All cycles, fixed points included, in standard form."""
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self(x)
            # scanning starts in increasing order, so `start` is the cycle minimum
            out.append(tuple(cycle))
        return tuple(out)

    @cached_property
    def _cycle_min(self) -> tuple[int, ...]:
        mins = [0] * (self.n + 1)
        for cycle in self.cycles:
            for x in cycle:
                mins[x] = cycle[0]
        return tuple(mins)

    def cycle_min(self, t: int) -> int:
        return self._cycle_min[t]

    def is_cycle_min(self, t: int) -> bool:
        return self._cycle_min[t] == t

    def cycle_of(self, t: int) -> tuple[int, ...]:
        m = self._cycle_min[t]
        return next(c for c in self.cycles if c[0] == m)

    @property
    def num_cycles(self) -> int:
        return len(self.cycles)

    def fixed_points(self) -> list[int]:
        return [t for t in range(1, self.n + 1) if self(t) == t]


class Derangement(Permutation):
    """A permutation without fixed points."""

    def __post_init__(self):
        super().__post_init__()
        for t, wt in enumerate(self.images, start=1):
            if t == wt:
                raise FixedPointError(t)


def as_derangement(w: Permutation) -> Derangement:
    if isinstance(w, Derangement):
        return w
    return Derangement(w.images)


_TOKEN = re.compile(r"\d+|,|\s+|.")


def tokenize_cycles(text: str) -> list[list[tuple[str, int]]]:
    """Split ``text`` into cycles of (token, column) pairs."""
    cycles = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise CycleFormatError(f"expected '(' but found {ch!r}", i + 1)
        close = text.find(")", i + 1)
        opener = text.find("(", i + 1)
        if close < 0 or 0 <= opener < close:
            raise CycleFormatError("unbalanced '('", i + 1)
        tokens = []
        comma_pending = False
        for m in _TOKEN.finditer(text, i + 1, close):
            tok, col = m.group(), m.start() + 1
            if tok.isdigit():
                tokens.append((tok, col))
                comma_pending = False
            elif tok == ",":
                if not tokens or comma_pending:
                    raise CycleFormatError("empty element", col)
                comma_pending = True
            elif not tok.isspace():
                raise CycleFormatError(f"unexpected character {tok!r}", col)
        if not tokens:
            raise CycleFormatError("empty cycle", i + 1)
        if comma_pending:
            raise CycleFormatError("trailing separator", close + 1)
        cycles.append(tokens)
        i = close + 1
    return cycles


def parse_cycle_form(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``"(13472)(56)"`` or ``"(1 10)(2,3)"``.

    Elements of 1..n that do not appear are fixed points.  A cycle written as
    one run of digits is read digit by digit, which is only allowed when
    ``n <= 9``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    cycles = []
    seen = {}
    for tokens in tokenize_cycles(text):
        if len(tokens) == 1 and len(tokens[0][0]) > 1:
            tok, col = tokens[0]
            if n > COMPACT_MAX_N:
                raise CycleFormatError(
                    f"compact cycle {tok!r} is ambiguous for n={n}; separate elements", col)
            tokens = [(d, col + k) for k, d in enumerate(tok)]
        cycle = []
        for tok, col in tokens:
            x = int(tok)
            if not 1 <= x <= n:
                raise CycleFormatError(f"element {x} outside 1..{n}", col)
            if x in seen:
                raise CycleFormatError(f"element {x} repeated", col)
            seen[x] = col
            cycle.append(x)
        cycles.append(cycle)
    return Permutation.from_cycles(cycles, n)


def standard_cycle_form(w: Permutation) -> str:
    sep = "" if w.n <= COMPACT_MAX_N else " "
    return "".join(
        "(" + sep.join(map(str, c)) + ")" for c in w.cycles if len(c) > 1)


def relabel_cycles(cycles: Iterable[Sequence], labels: Iterable | None = None):
    """Map cycles over any totally ordered labels onto 1..n.

    Returns ``(permutation, labels)`` where ``labels[i - 1]`` is the label sent
    to ``i``.  When ``labels`` is omitted the ground set is the set of labels
    appearing in ``cycles``.
    """
    cycles = [list(c) for c in cycles]
    ground = sorted(set(labels) if labels is not None
                    else {x for c in cycles for x in c})
    index = {x: i for i, x in enumerate(ground, start=1)}
    perm = Permutation.from_cycles([[index[x] for x in c] for c in cycles], len(ground))
    return perm, tuple(ground)


@dataclass(frozen=True)
class CanopyData:
    """Per-vertex values of lambda_w and rho_w for one permutation w.

    ``lambdas[t - 1]`` is the first vertex <= t reached by walking backwards
    along w from t; ``rhos[t - 1]`` is the run t, w(t), w^2(t), ... stopped
    just before the walk reaches a vertex <= t.
    """

    perm: Permutation
    lambdas: tuple[int, ...]
    rhos: tuple[frozenset[int], ...]

    def lam(self, t: int) -> int:
        return self.lambdas[t - 1]

    def rho(self, t: int) -> frozenset[int]:
        return self.rhos[t - 1]


def canopy(w: Permutation) -> CanopyData:
    lambdas = []
    rhos = []
    for t in range(1, w.n + 1):
        run = [t]
        x = w(t)
        while x > t:
            run.append(x)
            x = w(x)
        rhos.append(frozenset(run))

        x = w.inverse(t)
        while x > t:
            x = w.inverse(x)
        lambdas.append(x)
    return CanopyData(w, tuple(lambdas), tuple(rhos))


def enumerate_derangements(n: int) -> Iterator[Derangement]:
    """All derangements of 1..n, lexicographic in one-line notation."""
    if n < 2:
        return
    for images in itertools.permutations(range(1, n + 1)):
        if all(images[i] != i + 1 for i in range(n)):
            yield Derangement(images)


def enumerate_derangements_with_k_cycles(n: int, k: int) -> Iterator[Derangement]:
    if not 1 <= k <= n // 2:
        raise ValueError(f"k must lie in 1..{n // 2} for n={n}")
    for w in enumerate_derangements(n):
        if w.num_cycles == k:
            yield w
