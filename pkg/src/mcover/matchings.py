"""Perfect matchings of cubic graphs as edge-index bit vectors.

A matching is an ``int`` whose bit ``i`` is set when canonical edge ``i``
belongs to it. Matchings are ordered by their ascending edge-index tuples;
this order is the single tie-breaking rule used by every search downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Iterable, Iterator, Sequence

from ._parallel import ordered_map
from .graph import CubicGraph

DEFAULT_CAP = 1_000_000


@dataclass(frozen=True)
class Matching:
    """A perfect matching stored as a bit vector over canonical edge indices."""

    bits: int

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    @property
    def edges(self) -> tuple[int, ...]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return tuple(out)

    def __contains__(self, e: int) -> bool:
        return bool(self.bits >> e & 1)

    def __lt__(self, other: "Matching") -> bool:
        return self.edges < other.edges

    @classmethod
    def from_edges(cls, edges: Iterable[int]) -> "Matching":
        bits = 0
        for e in edges:
            bits |= 1 << e
        return cls(bits)


@dataclass(frozen=True)
class MatchingList(Sequence[Matching]):
    """Perfect matchings in ascending lexicographic order.

    ``complete`` is false when enumeration stopped at the cap, in which case
    every quantity derived from the list is only a lower bound.
    """

    matchings: tuple[Matching, ...]
    complete: bool = True

    def __len__(self) -> int:
        return len(self.matchings)

    def __getitem__(self, i):  # type: ignore[override]
        return self.matchings[i]

    def __iter__(self) -> Iterator[Matching]:
        return iter(self.matchings)

    @property
    def bits(self) -> list[int]:
        return [M.bits for M in self.matchings]


def is_perfect_matching(G: CubicGraph, bits: int | Matching) -> bool:
    if isinstance(bits, Matching):
        bits = bits.bits
    if bits < 0 or bits >> G.m:
        return False
    for inc in G.incidence:
        if sum(bits >> e & 1 for e in inc) != 1:
            return False
    return True


def _search(G: CubicGraph, covered: int, chosen: int, limit: int, out: list[int]) -> None:
    """Depth-first enumeration from a partial matching.

    Always branches on the lowest uncovered vertex. Its partner is then
    larger, so the chosen edge is the next one in ascending order and
    matchings come out lexicographically sorted.
    """
    full = (1 << G.n) - 1
    inc = G.incidence
    edges = G.edges

    def available(y: int, cov: int) -> bool:
        for f in inc[y]:
            u, v = edges[f]
            z = v if u == y else u
            if not cov >> z & 1:
                return True
        return False

    # explicit stack of (covered, chosen, lowest vertex, next incidence slot)
    stack = []
    if covered == full:
        out.append(chosen)
        return
    w = (~covered & (covered + 1)).bit_length() - 1
    stack.append([covered, chosen, w, 0])
    while stack:
        frame = stack[-1]
        cov, ch, w, i = frame
        if i == 3 or len(out) >= limit:
            stack.pop()
            continue
        frame[3] = i + 1
        e = inc[w][i]
        u, v = edges[e]
        x = v if u == w else u
        if cov >> x & 1:
            continue
        ncov = cov | (1 << w) | (1 << x)
        nch = ch | (1 << e)
        if ncov == full:
            out.append(nch)
            continue
        dead = False
        for y in (w, x):
            for f in inc[y]:
                a, b = edges[f]
                z = b if a == y else a
                if not ncov >> z & 1 and not available(z, ncov):
                    dead = True
                    break
            if dead:
                break
        if dead:
            continue
        nw = (~ncov & (ncov + 1)).bit_length() - 1
        stack.append([ncov, nch, nw, 0])


def _branch(G: CubicGraph, limit: int, e: int) -> list[int]:
    u, v = G.edges[e]
    out: list[int] = []
    _search(G, (1 << u) | (1 << v), 1 << e, limit, out)
    return out


def enumerate_pms(G: CubicGraph, cap: int | None = DEFAULT_CAP, workers: int = 1) -> MatchingList:
    """All perfect matchings of ``G`` in lexicographic order.

    With more than ``cap`` matchings the first ``cap`` are returned and the
    list is marked incomplete. ``workers > 1`` splits the search over the
    three edges at vertex 0; the output does not depend on ``workers``.
    """
    limit = (cap + 1) if cap is not None else float("inf")
    found: list[int] = []
    if workers > 1:
        first = [e for e in G.incidence[0]]
        # parallel edges at vertex 0 are separate branches
        parts = ordered_map(partial(_branch, G, limit), first, workers)
        for part in parts:
            found.extend(part)
    else:
        _search(G, 0, 0, limit, found)
    complete = cap is None or len(found) <= cap
    if not complete:
        found = found[:cap]
    return MatchingList(tuple(Matching(b) for b in found), complete)


def edge_pm_cover_check(G: CubicGraph, pms: MatchingList | None = None) -> list[int]:
    """Edges lying in no perfect matching."""
    if pms is None:
        pms = enumerate_pms(G)
    union = 0
    for M in pms:
        union |= M.bits
    return [e for e in range(G.m) if not union >> e & 1]
