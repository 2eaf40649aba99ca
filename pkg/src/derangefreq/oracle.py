"""Independent checks of the frequency formula.

``oracle_frequency`` counts, literally, the graphs on {1..n} whose derangement
set contains w: it walks every edge mask and applies the per-vertex adjacency
test.  ``oracle_frequency_constructive`` instead builds the admissible graphs
the way the counting argument does (a nonempty subset of each requirement set,
anything outside their union) and checks the disjointness and containment
facts it depends on.  ``sample_rate`` estimates the rate from uniform random
graphs for sizes beyond exhaustive reach.

Random streams come from numpy's PCG64 bit generator.  Trials are split into
fixed blocks of ``SAMPLE_BLOCK`` draws and block ``b`` is seeded with
``SeedSequence(seed, spawn_key=(b,))``, so results depend only on
``(seed, trials)`` and never on the worker count.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .dset import check_membership, derangement_set, edge_requirement, non_min_elements
from .frequency import frequency, max_rate_derangement, min_rate_derangement
from .graph import enumerate_graphs, pair_index, partition_range
from .perm import Derangement, Permutation, canopy, enumerate_derangements, parse_cycle_form

__all__ = [
    "DEFAULT_ORACLE_LIMIT",
    "DEFAULT_SWEEP_LIMIT",
    "MonteCarloEstimate",
    "OracleLimitError",
    "OracleResult",
    "VerifyReport",
    "VerifyRow",
    "count_members_in_range",
    "designated_spot_list",
    "oracle_frequency",
    "oracle_frequency_constructive",
    "requirement_masks",
    "sample_rate",
    "sum_over_graphs",
    "verify",
]

DEFAULT_ORACLE_LIMIT = 7
DEFAULT_SWEEP_LIMIT = 5
CHUNK = 1 << 20
SAMPLE_BLOCK = 1 << 16


class OracleLimitError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    count: int
    universe_log2: int
    elapsed: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class MonteCarloEstimate:
    trials: int
    hits: int
    seed: int

    @property
    def estimate(self) -> Fraction:
        return Fraction(self.hits, self.trials)


def requirement_masks(w: Permutation) -> list[int]:
    """Per vertex t, the edge bits joining lambda_w(t) to rho_w(t).

    Built straight from the canopy maps; a fixed point yields mask 0 because
    the only candidate pair is a loop.
    """
    c = canopy(w)
    masks = []
    for t in range(1, w.n + 1):
        lam = c.lam(t)
        m = 0
        for s in c.rho(t):
            if s != lam:
                m |= 1 << pair_index(lam, s, w.n)
        masks.append(m)
    return masks


def _count_chunk(masks: list[int], start: int, stop: int) -> int:
    graphs = np.arange(start, stop, dtype=np.uint64)
    ok = np.ones(stop - start, dtype=bool)
    for m in masks:
        ok &= (graphs & np.uint64(m)) != 0
    return int(np.count_nonzero(ok))


def count_members_in_range(w: Permutation, start: int, stop: int) -> int:
    """Graphs with mask in ``[start, stop)`` whose derangement set holds w."""
    masks = requirement_masks(w)
    return sum(_count_chunk(masks, a, min(a + CHUNK, stop)) for a in range(start, stop, CHUNK))


def _count_literal(w: Permutation) -> int:
    return sum(check_membership(g, w).member for g in enumerate_graphs(w.n))


def _range_job(args):
    images, start, stop = args
    return count_members_in_range(Permutation(images), start, stop)


def oracle_frequency(w: Permutation, jobs: int = 1, limit: int = DEFAULT_ORACLE_LIMIT,
                     force: bool = False, literal: bool = False) -> OracleResult:
    """Exhaustive count over all 2^C(n,2) graphs.

    ``literal=True`` calls check_membership on every graph object instead of
    the vectorized mask test; it is slow and meant for n <= 5.
    """
    n = w.n
    if n > limit and not force:
        raise OracleLimitError(f"n={n} exceeds the oracle limit {limit}; pass force=True")
    t0 = time.perf_counter()
    total = 1 << comb(n, 2)
    if literal:
        count = _count_literal(w)
    elif jobs <= 1:
        count = count_members_in_range(w, 0, total)
    else:
        ranges = partition_range(total, jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            count = sum(pool.map(_range_job, [(w.images, a, b) for a, b in ranges]))
    return OracleResult(count, comb(n, 2), time.perf_counter() - t0)


def _nonempty_submask_count(mask: int) -> int:
    count = 0
    sub = mask
    while sub:
        count += 1
        sub = (sub - 1) & mask
    return count


def oracle_frequency_constructive(w: Derangement) -> OracleResult:
    """Count admissible graphs by independent choice per requirement set."""
    t0 = time.perf_counter()
    n = w.n
    u = non_min_elements(w)
    reqs = {t: edge_requirement(w, t) for t in range(1, n + 1)}
    constrained = [reqs[t] for t in u]
    for i, a in enumerate(constrained):
        for b in constrained[i + 1:]:
            if not a.isdisjoint(b):
                raise AssertionError(f"requirement sets overlap for {w}")
    for cycle in w.cycles:
        s = cycle[0]
        if not reqs[w(s)].issubset(reqs[s]):
            raise AssertionError(f"E(w(s)) not inside E(s) for s={s}, w={w}")
    union = 0
    count = 1
    for e in constrained:
        union |= e.mask
        count *= _nonempty_submask_count(e.mask)
    free = comb(n, 2) - union.bit_count()
    return OracleResult(count << free, comb(n, 2), time.perf_counter() - t0)


def _sample_block(masks: list[int], edge_bits: int, seed: int, block: int, size: int) -> int:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))
    graphs = rng.integers(0, 1 << edge_bits, size=size, dtype=np.uint64, endpoint=False)
    ok = np.ones(size, dtype=bool)
    for m in masks:
        ok &= (graphs & np.uint64(m)) != 0
    return int(np.count_nonzero(ok))


def _sample_job(args):
    masks, edge_bits, seed, blocks = args
    return sum(_sample_block(masks, edge_bits, seed, b, size) for b, size in blocks)


def sample_rate(w: Permutation, trials: int, seed: int, jobs: int = 1) -> MonteCarloEstimate:
    """Fraction of ``trials`` uniform random graphs whose derangement set holds w."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must be a 64-bit unsigned value")
    masks = requirement_masks(w)
    edge_bits = comb(w.n, 2)
    blocks = [(b, min(SAMPLE_BLOCK, trials - b * SAMPLE_BLOCK))
              for b in range((trials + SAMPLE_BLOCK - 1) // SAMPLE_BLOCK)]
    if jobs <= 1 or len(blocks) == 1:
        hits = _sample_job((masks, edge_bits, seed, blocks))
    else:
        work = [(masks, edge_bits, seed, blocks[a:b])
                for a, b in partition_range(len(blocks), min(jobs, len(blocks)))]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = sum(pool.map(_sample_job, work))
    return MonteCarloEstimate(trials, hits, seed)


def sum_over_graphs(n: int, limit: int = DEFAULT_SWEEP_LIMIT, force: bool = False) -> int:
    """Sum of |D(G)| over every graph G on {1..n}."""
    if n > limit and not force:
        raise OracleLimitError(f"n={n} exceeds the sweep limit {limit}; pass force=True")
    if n < 2:
        return 0
    return sum(len(derangement_set(g, force=True)) for g in enumerate_graphs(n))


def designated_spot_list(n: int) -> list[Derangement]:
    """Derangements checked by spot verification at size n."""
    out = [min_rate_derangement(n), max_rate_derangement(n)]
    # all transpositions, plus one increasing 3-cycle when n is odd
    cycles = [[i, i + 1] for i in range(1, n - 2 * (n % 2), 2)]
    if n % 2:
        cycles.append([n - 2, n - 1, n])
    out.append(Derangement.from_cycles(cycles, n))
    if n == 7:
        out += [Derangement(parse_cycle_form("(13472)(56)", 7).images),
                Derangement(parse_cycle_form("(13427)(56)", 7).images)]
    seen = []
    for w in out:
        if w not in seen:
            seen.append(w)
    return seen


@dataclass
class VerifyRow:
    perm: Derangement
    formula: int
    enumerated: int
    constructive: int

    @property
    def ok(self) -> bool:
        return self.formula == self.enumerated == self.constructive


@dataclass
class VerifyReport:
    n: int
    mode: str
    rows: list[VerifyRow]
    double_count: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        dc_ok = self.double_count is None or self.double_count[0] == self.double_count[1]
        return dc_ok and all(r.ok for r in self.rows)


def verify(n: int, full: bool = True, jobs: int = 1, force: bool = False) -> VerifyReport:
    """Formula vs enumeration oracle vs constructive count, plus double counting."""
    if full:
        if n > DEFAULT_SWEEP_LIMIT and not (force and n <= 6):
            raise OracleLimitError(
                f"--full allows n <= {DEFAULT_SWEEP_LIMIT} (n=6 with force), got n={n}")
        perms = list(enumerate_derangements(n))
    else:
        if n > DEFAULT_ORACLE_LIMIT and not force:
            raise OracleLimitError(f"--spot allows n <= {DEFAULT_ORACLE_LIMIT} without force")
        perms = designated_spot_list(n)
    rows = [VerifyRow(w, frequency(w), oracle_frequency(w, jobs=jobs, force=True).count,
                      oracle_frequency_constructive(w).count) for w in perms]
    double = None
    if full and n <= DEFAULT_SWEEP_LIMIT:
        double = (sum(r.formula for r in rows), sum_over_graphs(n))
    return VerifyReport(n, "full" if full else "spot", rows, double)
