"""Cubic multigraphs: representation, codecs and structural checks.

Edges are stored in a canonical order (each pair normalised to ``(min, max)``
and the list sorted lexicographically). Every bit-vector index used elsewhere
in the package refers to this order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
import sys
from typing import Iterable, Sequence

from .errors import GraphFormatError, NotCubicError, UnsupportedFormatError

Edge = tuple[int, int]


def canonical_order(edges: Sequence[Edge]) -> list[int]:
    """Return raw edge positions sorted into canonical order (stable)."""
    keys = [(min(u, v), max(u, v)) for u, v in edges]
    return sorted(range(len(edges)), key=lambda i: keys[i])


@dataclass(frozen=True)
class CubicGraph:
    """Loop-free cubic multigraph on vertices ``0..n-1``.

    The constructor canonicalises the edge list and raises
    :class:`NotCubicError` on a loop or on a vertex of degree other than 3.
    """

    n: int
    edges: tuple[Edge, ...]
    incidence: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.n
        if n <= 0:
            raise NotCubicError(f"vertex count must be positive, got {n}")
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise NotCubicError(f"loop at vertex {u}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        inc: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(norm):
            inc[u].append(i)
            inc[v].append(i)
        bad = [v for v in range(n) if len(inc[v]) != 3]
        if bad:
            v = bad[0]
            raise NotCubicError(
                f"vertex {v} has degree {len(inc[v])} ({len(bad)} vertices of degree != 3)"
            )
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "incidence", tuple(tuple(x) for x in inc))

    @classmethod
    def with_positions(cls, n: int, edges: Sequence[Edge]) -> tuple["CubicGraph", list[int]]:
        """Build a graph and report where each raw edge landed.

        ``pos[i]`` is the canonical index of ``edges[i]``.
        """
        order = canonical_order(edges)
        pos = [0] * len(edges)
        for k, i in enumerate(order):
            pos[i] = k
        return cls(n, [edges[i] for i in order]), pos

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_simple(self) -> bool:
        return all(self.edges[i] != self.edges[i + 1] for i in range(self.m - 1))

    def other(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.incidence[v]]

    def mask_edges(self, bits: int) -> list[int]:
        """Edge indices set in a bit vector, ascending."""
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def girth(self) -> int:
        """Length of a shortest cycle (2 for parallel edges)."""
        if not self.is_simple:
            return 2
        best = self.n + 1
        for s in range(self.n):
            dist = {s: 0}
            parent_edge = {s: -1}
            frontier = [s]
            while frontier:
                nxt = []
                for v in frontier:
                    for e in self.incidence[v]:
                        if e == parent_edge[v]:
                            continue
                        w = self.other(e, v)
                        if w in dist:
                            best = min(best, dist[v] + dist[w] + 1)
                        else:
                            dist[w] = dist[v] + 1
                            parent_edge[w] = e
                            nxt.append(w)
                frontier = nxt
        return best


@dataclass(frozen=True)
class ValidationReport:
    is_cubic: bool
    is_loop_free: bool
    is_bridgeless: bool
    bridges: tuple[int, ...]
    components: int
    is_simple: bool = True

    @property
    def ok(self) -> bool:
        return self.is_cubic and self.is_loop_free and self.is_bridgeless


# -- structure -------------------------------------------------------------


def connected_components(G: CubicGraph, skip_edge: int = -1) -> int:
    seen = [False] * G.n
    count = 0
    for s in range(G.n):
        if seen[s]:
            continue
        count += 1
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for e in G.incidence[v]:
                if e == skip_edge:
                    continue
                w = G.other(e, v)
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return count


def find_bridges(G: CubicGraph) -> list[int]:
    """Bridges by iterative DFS low-points.

    The DFS skips the tree edge by index, not by endpoint, so a parallel
    copy of the tree edge counts as a back edge and parallel edges are never
    reported.
    """
    n = G.n
    disc = [-1] * n
    low = [0] * n
    bridges = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: (vertex, edge used to enter it, next incidence slot)
        stack = [(root, -1, 0)]
        while stack:
            v, pe, i = stack[-1]
            if i < 3:
                stack[-1] = (v, pe, i + 1)
                e = G.incidence[v][i]
                if e == pe:
                    continue
                w = G.other(e, v)
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, 0))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        bridges.append(pe)
    return sorted(bridges)


def validate(G: CubicGraph) -> ValidationReport:
    bridges = find_bridges(G)
    return ValidationReport(
        is_cubic=True,
        is_loop_free=True,
        is_bridgeless=not bridges,
        bridges=tuple(bridges),
        components=connected_components(G),
        is_simple=G.is_simple,
    )


def is_3_edge_colorable(G: CubicGraph) -> bool:
    """Backtracking proper 3-edge-colouring, independent of matching code."""
    color = [-1] * G.m
    # colour edges in BFS order so constraints propagate early
    order: list[int] = []
    seen: set[int] = set()
    visited = [False] * G.n
    for s in range(G.n):
        if visited[s]:
            continue
        visited[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for e in G.incidence[v]:
                if e not in seen:
                    seen.add(e)
                    order.append(e)
                w = G.other(e, v)
                if not visited[w]:
                    visited[w] = True
                    queue.append(w)

    def used(e: int) -> int:
        mask = 0
        u, v = G.edges[e]
        for x in (u, v):
            for f in G.incidence[x]:
                if f != e and color[f] >= 0:
                    mask |= 1 << color[f]
        return mask

    def rec(k: int) -> bool:
        if k == len(order):
            return True
        e = order[k]
        taken = used(e)
        # colour permutations are symmetric: fix the first edge
        for c in range(1 if k == 0 else 3):
            if not taken >> c & 1:
                color[e] = c
                if rec(k + 1):
                    return True
        color[e] = -1
        return False

    limit = sys.getrecursionlimit()
    if G.m + 100 > limit:
        sys.setrecursionlimit(G.m + 100)
    try:
        return rec(0)
    finally:
        sys.setrecursionlimit(limit)


# -- graph6 ----------------------------------------------------------------


def _g6_size(text: str) -> tuple[int, int]:
    b = [ord(c) - 63 for c in text[:8]]
    if not b or any(x < 0 or x > 63 for x in b[:1]):
        raise GraphFormatError("empty or invalid graph6 header")
    if b[0] < 63:
        return b[0], 1
    if len(b) >= 4 and b[1] < 63:
        return (b[1] << 12) | (b[2] << 6) | b[3], 4
    if len(b) >= 8 and b[1] == 63:
        n = 0
        for x in b[2:8]:
            n = (n << 6) | x
        return n, 8
    raise GraphFormatError("truncated graph6 size field")


def decode_graph6(text: str) -> tuple[int, list[Edge]]:
    """Decode a graph6 line into ``(n, edges)`` without any degree checks."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 line")
    if any(not (63 <= ord(c) <= 126) for c in s):
        raise GraphFormatError("graph6 characters must lie in '?'..'~'")
    n, off = _g6_size(s)
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[off:]
    if len(body) != need:
        raise GraphFormatError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    bits = []
    for c in body:
        x = ord(c) - 63
        bits.extend((x >> (5 - k)) & 1 for k in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    if any(bits[k:]):
        raise GraphFormatError("non-zero graph6 padding bits")
    return n, edges


def parse_graph6(text: str) -> CubicGraph:
    n, edges = decode_graph6(text)
    return CubicGraph(n, edges)


def emit_graph6(G: CubicGraph) -> str:
    if not G.is_simple:
        raise UnsupportedFormatError("graph6 cannot express parallel edges")
    n = G.n
    if n < 63:
        head = chr(n + 63)
    elif n < 258048:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    else:
        head = "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    present = set(G.edges)
    bits = [1 if (i, j) in present else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        body.append(chr(x + 63))
    return head + "".join(body)


# -- edge list (.cbg) ------------------------------------------------------


def _cbg_records(lines: Iterable[str]):
    """Yield ``(n, edges)`` records from an iterable of text lines."""
    it = (ln.strip() for ln in lines)
    for line in it:
        if not line or line.startswith("#"):
            continue
        head = line.split()
        if len(head) != 2:
            raise GraphFormatError(f"expected header 'n m', got {line!r}")
        try:
            n, m = int(head[0]), int(head[1])
        except ValueError:
            raise GraphFormatError(f"non-integer header {line!r}") from None
        edges = []
        while len(edges) < m:
            try:
                row = next(it)
            except StopIteration:
                raise GraphFormatError(f"expected {m} edges, found {len(edges)}") from None
            if not row or row.startswith("#"):
                continue
            parts = row.split()
            if len(parts) != 2:
                raise GraphFormatError(f"expected 'u v', got {row!r}")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise GraphFormatError(f"non-integer edge {row!r}") from None
        yield n, edges


def parse_edge_list(text: str) -> CubicGraph:
    """Parse one ``.cbg`` record: a header ``n m`` then ``m`` lines ``u v``.

    Repeated pairs encode parallel edges. Trailing content after the first
    record is an error.
    """
    records = list(_cbg_records(text.splitlines()))
    if len(records) != 1:
        if not records:
            raise GraphFormatError("empty edge list")
        # a second header usually means the declared m was too small
        raise GraphFormatError("edge count mismatch: trailing lines after the declared edges")
    n, edges = records[0]
    if 3 * n != 2 * len(edges):
        raise GraphFormatError(f"n={n}, m={len(edges)} violates 2m = 3n")
    return CubicGraph(n, edges)


def emit_edge_list(G: CubicGraph) -> str:
    rows = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(rows) + "\n"


def disjoint_union(*graphs: CubicGraph) -> CubicGraph:
    edges: list[Edge] = []
    off = 0
    for H in graphs:
        edges.extend((u + off, v + off) for u, v in H.edges)
        off += H.n
    return CubicGraph(off, edges)
