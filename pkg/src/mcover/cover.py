"""Exact m_t(G) and the per-instance coverage machinery.

All fractions are :class:`fractions.Fraction`; no comparison in this module
goes through floating point.

Optimising over *distinct* matchings loses nothing: a repeated matching
never enlarges a union, so when at least ``t`` distinct matchings exist an
optimal ``t``-tuple can be taken duplicate-free, and when fewer exist the
best possible value is the coverage of all of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from ._parallel import chunk_ranges, ordered_map
from .errors import DomainError, NotAMatchingError
from .graph import CubicGraph
from .matchings import Matching, MatchingList, is_perfect_matching


@dataclass(frozen=True)
class CoverProfile:
    t: int
    m: int
    depth: tuple[int, ...]
    eps: tuple[Fraction, ...]
    union_size: int
    edge_depth: int

    @property
    def covered(self) -> Fraction:
        return Fraction(self.union_size, self.m)


@dataclass(frozen=True)
class MtResult:
    t: int
    value: Fraction
    witness: tuple[Matching, ...]
    exact: bool


@dataclass(frozen=True)
class Census:
    """Vertex-type fractions for a ``k``-tuple of matchings, ``k >= 4``.

    With the depths at a vertex sorted as ``x <= y <= z`` the six fields
    count types (0,0,k), (0,1,k-1), (0,>=2,>=2), (1,1,k-2), (1,>=2,>=2)
    and (>=2,>=2,>=2).
    """

    k: int
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    f: Fraction

    @property
    def total(self) -> Fraction:
        return self.a + self.b + self.c + self.d + self.e + self.f

    @property
    def covered(self) -> Fraction:
        return self.a / 3 + 2 * self.b / 3 + 2 * self.c / 3 + self.d + self.e + self.f

    @property
    def singly_covered(self) -> Fraction:
        return self.b / 3 + 2 * self.d / 3 + self.e / 3


def _bits(Ms: Sequence[Matching | int]) -> list[int]:
    return [M.bits if isinstance(M, Matching) else int(M) for M in Ms]


def _check(G: CubicGraph, Ms: Sequence[Matching | int]) -> list[int]:
    bits = _bits(Ms)
    for b in bits:
        if not is_perfect_matching(G, b):
            raise NotAMatchingError(f"not a perfect matching: edges {Matching(b).edges}")
    return bits


def union_coverage(G: CubicGraph, Ms: Sequence[Matching | int]) -> Fraction:
    union = 0
    for b in _check(G, Ms):
        union |= b
    return Fraction(union.bit_count(), G.m)


def depth_profile(G: CubicGraph, Ms: Sequence[Matching | int]) -> CoverProfile:
    bits = _bits(Ms)
    depth = [0] * G.m
    for b in bits:
        for e in G.mask_edges(b):
            depth[e] += 1
    t = len(bits)
    counts = [0] * (t + 1)
    for d in depth:
        counts[d] += 1
    return CoverProfile(
        t=t,
        m=G.m,
        depth=tuple(depth),
        eps=tuple(Fraction(c, G.m) for c in counts),
        union_size=G.m - counts[0],
        edge_depth=max(depth, default=0),
    )


# -- m_t -------------------------------------------------------------------


def _padded(ms: Sequence[Matching], idx: Sequence[int], t: int) -> tuple[Matching, ...]:
    # lex-minimal non-decreasing tuple using every index at least once
    idx = list(idx)
    return tuple(ms[i] for i in [idx[0]] * (t - len(idx)) + idx)


def _bb_range(bits: Sequence[int], t: int, m: int, half: int, floor: int, lo: int, hi: int):
    """Branch and bound over increasing index tuples whose first index is in [lo, hi).

    Returns ``(value, tuple)`` for the lexicographically first tuple of
    maximum union size strictly above ``floor``, or ``(floor, None)``.
    """
    N = len(bits)
    best = floor
    best_tuple = None
    chosen: list[int] = []

    def rec(start: int, stop: int, union: int) -> bool:
        nonlocal best, best_tuple
        size = union.bit_count()
        r = t - len(chosen)
        if r == 0:
            if size > best:
                best = size
                best_tuple = tuple(chosen)
            return best == m
        if min(size + r * half, m) <= best:
            return False
        free = ~union
        gains = [(bits[i] & free).bit_count() for i in range(start, N)]
        # marginal gains only shrink as the union grows, so the r largest
        # current gains bound what r more (distinct) picks can add
        bound = size + sum(sorted(gains, reverse=True)[:r])
        if min(bound, m) <= best:
            return False
        for i in range(start, min(stop, N - r + 1)):
            if size + gains[i - start] + (r - 1) * half <= best:
                continue
            chosen.append(i)
            done = rec(i + 1, N, union | bits[i])
            chosen.pop()
            if done:
                return True
        return False

    rec(lo, hi, 0)
    return best, best_tuple


def mt_greedy(G: CubicGraph, t: int, Ms: MatchingList | Sequence[Matching]) -> MtResult:
    """Greedy max-coverage lower bound (lowest index wins ties)."""
    ms = list(Ms)
    if not ms:
        raise DomainError("greedy needs at least one matching")
    union = 0
    picked: list[int] = []
    for _ in range(t):
        free = ~union
        gi = max(range(len(ms)), key=lambda i: ((ms[i].bits & free).bit_count(), -i))
        picked.append(gi)
        union |= ms[gi].bits
    return MtResult(t, Fraction(union.bit_count(), G.m), tuple(ms[i] for i in picked), False)


def mt_exact(G: CubicGraph, t: int, Ms: MatchingList, workers: int = 1) -> MtResult:
    """Maximum fraction of edges covered by ``t`` perfect matchings.

    Branch and bound over increasing index tuples of ``Ms``; the witness is
    the lexicographically first optimal tuple. ``workers > 1`` splits the
    first index across processes and merges deterministically. An
    incomplete ``Ms`` yields a lower bound with ``exact=False``.
    """
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    ms = list(Ms)
    exact = getattr(Ms, "complete", True)
    if not ms:
        return MtResult(t, Fraction(0), (), exact)
    N = len(ms)
    bits = [M.bits for M in ms]
    if N <= t:
        union = 0
        for b in bits:
            union |= b
        return MtResult(t, Fraction(union.bit_count(), G.m), _padded(ms, range(N), t), exact)

    # a greedy value seeds the bound; the search keeps only tuples beating
    # greedy - 1 so the lex-first optimum is still found
    floor = int(mt_greedy(G, t, ms).value * G.m) - 1
    half = G.n // 2
    ranges = chunk_ranges(N - t + 1, workers * 4 if workers > 1 else 1)
    parts = ordered_map(partial(_bb_task, bits, t, G.m, half, floor), ranges, workers)
    best, best_tuple = floor, None
    for value, tup in parts:
        if tup is not None and value > best:
            best, best_tuple = value, tup
    assert best_tuple is not None
    return MtResult(t, Fraction(best, G.m), tuple(ms[i] for i in best_tuple), exact)


def _bb_task(bits, t, m, half, floor, rng):
    return _bb_range(bits, t, m, half, floor, rng[0], rng[1])


def mt_naive(G: CubicGraph, t: int, Ms: Sequence[Matching]) -> Fraction:
    """All-subsets oracle for :func:`mt_exact` (distinct subsets, padded)."""
    bits = _bits(Ms)
    if len(bits) <= t:
        u = 0
        for b in bits:
            u |= b
        return Fraction(u.bit_count(), G.m)
    best = 0
    for combo in combinations(bits, t):
        u = 0
        for b in combo:
            u |= b
        best = max(best, u.bit_count())
    return Fraction(best, G.m)


# -- census and drop steps -------------------------------------------------


def vertex_type_census(G: CubicGraph, Ms: Sequence[Matching | int], k: int | None = None) -> Census:
    bits = _bits(Ms)
    k = len(bits) if k is None else k
    if k != len(bits):
        raise DomainError(f"k={k} but {len(bits)} matchings given")
    if k < 4:
        raise DomainError("the six vertex types are exhaustive only for k >= 4; use depth_profile")
    depth = depth_profile(G, bits).depth
    counts = [0] * 6
    for inc in G.incidence:
        x, y, _z = sorted(depth[e] for e in inc)
        if x == 0:
            counts[0 if y == 0 else 1 if y == 1 else 2] += 1
        elif x == 1:
            counts[3 if y == 1 else 4] += 1
        else:
            counts[5] += 1
    return Census(k, *(Fraction(c, G.n) for c in counts))


def _singly(G: CubicGraph, bits: list[int]) -> list[int]:
    """Per matching, the number of its edges no other matching covers."""
    out = []
    for i, b in enumerate(bits):
        others = 0
        for j, c in enumerate(bits):
            if j != i:
                others |= c
        out.append((b & ~others).bit_count())
    return out


def drop_min_singly(G: CubicGraph, Ms: Sequence[Matching]) -> list[Matching]:
    """Remove the matching owning the fewest singly-covered edges (first wins ties)."""
    ms = list(Ms)
    if len(ms) < 2:
        raise DomainError("need at least two matchings")
    own = _singly(G, _bits(ms))
    drop = min(range(len(ms)), key=lambda i: (own[i], i))
    return ms[:drop] + ms[drop + 1:]


def drop_best_pair(G: CubicGraph, Ms: Sequence[Matching]) -> list[Matching]:
    """Keep the pair of the four matchings whose union is largest.

    Ties go to the lexicographically first pair of positions.
    """
    ms = list(Ms)
    if len(ms) != 4:
        raise DomainError(f"need exactly 4 matchings, got {len(ms)}")
    best = max(combinations(range(4), 2), key=lambda p: ((ms[p[0]].bits | ms[p[1]].bits).bit_count(), -p[0], -p[1]))
    return [ms[best[0]], ms[best[1]]]


# -- conjecture searches ---------------------------------------------------


def _first(Ms: Sequence[Matching], size: int, ok) -> tuple[Matching, ...] | None:
    bits = _bits(Ms)
    for idx in combinations(range(len(bits)), size):
        if ok([bits[i] for i in idx]):
            return tuple(Ms[i] for i in idx)
    for idx in combinations_with_replacement(range(len(bits)), size):
        if len(set(idx)) < size and ok([bits[i] for i in idx]):
            return tuple(Ms[i] for i in idx)
    return None


def fan_raspaud_search(G: CubicGraph, Ms: Sequence[Matching]) -> tuple[Matching, ...] | None:
    """First triple (distinct first, then with repeats) with empty common intersection."""
    return _first(Ms, 3, lambda b: b[0] & b[1] & b[2] == 0)


def _max_depth_le2(b: list[int]) -> bool:
    for x, y, z in combinations(b, 3):
        if x & y & z:
            return False
    return True


def conjecture3_search(G: CubicGraph, Ms: Sequence[Matching]) -> tuple[Matching, ...] | None:
    """First quadruple of edge-depth at most 2 (distinct first, then with repeats)."""
    return _first(Ms, 4, _max_depth_le2)


def berge_fulkerson_search(G: CubicGraph, Ms: Sequence[Matching]) -> tuple[Matching, ...] | None:
    """Lexicographically first multiset of six matchings covering every edge twice.

    Every matching contains exactly one of the three edges at vertex 0, and
    those edges have indices 0, 1, 2, so in sorted order the matchings that
    contain edge ``inc[0][j]`` form a contiguous block. A cover uses exactly
    two matchings from each block, which fixes the block of every slot.
    """
    ms = list(Ms)
    bits = _bits(ms)
    full = (1 << G.m) - 1
    blocks = [[i for i, b in enumerate(bits) if b >> e & 1] for e in G.incidence[0]]
    slot_block = [0, 0, 1, 1, 2, 2]
    chosen: list[int] = []
    index_of = {b: i for i, b in enumerate(bits)}

    def rec(slot: int, prev: int, once: int, twice: int) -> bool:
        if slot == 5:
            # the last matching is forced: exactly the edges still short by one
            if once | twice != full:
                return False
            i = index_of.get(once)
            if i is None or i < prev or i not in blocks[2]:
                return False
            chosen.append(i)
            return True
        for i in blocks[slot_block[slot]]:
            if i < prev:
                continue
            b = bits[i]
            if b & twice:
                continue
            chosen.append(i)
            # b avoids `twice`, so edges of b move up one level
            if rec(slot + 1, i, once ^ b, twice | (once & b)):
                return True
            chosen.pop()
        return False

    if not rec(0, 0, 0, 0):
        return None
    return tuple(ms[i] for i in chosen)


@dataclass(frozen=True)
class F35Report:
    """Outcome of the pairwise three-fifths necessary condition.

    ``partners[i]`` counts matchings ``M'`` with ``|M_i u M'| = 3m/5``; the
    condition holds when at least three matchings have at least three
    partners each. This is the literal quantified reading of an informally
    stated condition (``interpretation`` records that).
    """

    divisible: bool
    holds: bool
    partners: tuple[int, ...]
    qualifying: tuple[int, ...]
    m2: Fraction
    m2_is_three_fifths: bool
    interpretation: str = "literal: >=3 matchings each with >=3 partners M' such that |M u M'| = 3m/5"


def f35_condition(G: CubicGraph, Ms: MatchingList) -> F35Report:
    bits = _bits(Ms)
    m2 = mt_exact(G, 2, Ms).value if len(bits) else Fraction(0)
    if G.m % 5:
        return F35Report(False, False, tuple(0 for _ in bits), (), m2, m2 == Fraction(3, 5))
    target = 3 * G.m // 5
    partners = []
    for i, b in enumerate(bits):
        partners.append(sum(1 for j, c in enumerate(bits) if j != i and (b | c).bit_count() == target))
    qualifying = tuple(i for i, p in enumerate(partners) if p >= 3)
    return F35Report(True, len(qualifying) >= 3, tuple(partners), qualifying, m2, m2 == Fraction(3, 5))
