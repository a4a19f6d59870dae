"""Named instances, flower snarks and catalog ingestion."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .errors import DomainError, GraphFormatError, NotCubicError
from .graph import CubicGraph, _cbg_records, decode_graph6, validate

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Claim:
    """A known value together with where it comes from.

    Claims are re-verified by the test suite and are never used as an
    oracle for themselves.
    """

    value: object
    source: str


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: CubicGraph
    expected: dict[str, Claim] = field(default_factory=dict)


def _lcf(n: int, shifts: list[int]) -> CubicGraph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    seen = set()
    for i in range(n):
        j = (i + shifts[i % len(shifts)]) % n
        key = (min(i, j), max(i, j))
        if key not in seen:
            seen.add(key)
            edges.append(key)
    return CubicGraph(n, edges)


def k4() -> CubicGraph:
    return CubicGraph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


def k33() -> CubicGraph:
    return CubicGraph(6, [(i, j) for i in range(3) for j in range(3, 6)])


def prism() -> CubicGraph:
    return CubicGraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def cube() -> CubicGraph:
    return CubicGraph(8, [(i, i ^ (1 << b)) for i in range(8) for b in range(3) if i < i ^ (1 << b)])


def petersen() -> CubicGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return CubicGraph(10, outer + spokes + inner)


def dodecahedron() -> CubicGraph:
    return _lcf(20, [10, 7, 4, -4, -7, 10, -4, 7, -7, 4])


def triple_edge() -> CubicGraph:
    return CubicGraph(2, [(0, 1)] * 3)


def flower_snark(k: int) -> CubicGraph:
    """Flower snark J_k on ``4k`` vertices (``k`` odd, at least 5).

    Vertex ``4i`` is the centre of star ``i`` with leaves ``4i+1`` (on the
    k-cycle) and ``4i+2``, ``4i+3`` (on the single 2k-cycle).
    """
    if k < 5 or k % 2 == 0:
        raise DomainError(f"flower snark needs odd k >= 5, got {k}")
    a = lambda i: 4 * (i % k)  # noqa: E731
    edges = []
    for i in range(k):
        edges += [(a(i), a(i) + 1), (a(i), a(i) + 2), (a(i), a(i) + 3)]
        edges.append((a(i) + 1, a(i + 1) + 1))
    cycle = [a(i) + 2 for i in range(k)] + [a(i) + 3 for i in range(k)]
    edges += [(cycle[j], cycle[(j + 1) % (2 * k)]) for j in range(2 * k)]
    return CubicGraph(4 * k, edges)


def bridged_example() -> CubicGraph:
    """Smallest kind of cubic graph with a bridge.

    Two copies of K4 with one edge subdivided, the subdivision vertices
    joined by the bridge. Not part of the bridgeless corpus.
    """
    edges = _subdivided_k4()
    edges += [(u + 5, v + 5) for u, v in _subdivided_k4()]
    edges.append((0, 5))
    return CubicGraph(10, edges)


def _subdivided_k4() -> list[tuple[int, int]]:
    # K4 on 1..4 with edge 1-2 replaced by the path 1-0-2
    return [(1, 0), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


_BUILDERS = {
    "k4": (k4, {"pm_count": Claim(3, "classical")}),
    "k33": (k33, {"pm_count": Claim(6, "permanent of the all-ones 3x3 matrix")}),
    "prism": (prism, {"pm_count": Claim(4, "hand count")}),
    "cube": (cube, {"pm_count": Claim(9, "classical")}),
    "petersen": (
        petersen,
        {
            "pm_count": Claim(6, "classical"),
            "m2": Claim("3/5", "classical"),
            "m3": Claim("4/5", "classical"),
            "m4": Claim("14/15", "classical"),
        },
    ),
    "dodecahedron": (dodecahedron, {"pm_count": Claim(36, "classical")}),
    "triple_edge": (triple_edge, {"pm_count": Claim(3, "one matching per parallel edge")}),
    "j5": (lambda: flower_snark(5), {"three_edge_colorable": Claim(False, "snark")}),
    "j7": (lambda: flower_snark(7), {"three_edge_colorable": Claim(False, "snark")}),
}

NAMES = tuple(_BUILDERS)


def named(name: str) -> NamedGraph:
    key = name.lower()
    if key not in _BUILDERS:
        raise KeyError(f"unknown graph {name!r}; known: {', '.join(NAMES)}")
    build, expected = _BUILDERS[key]
    return NamedGraph(key, build(), dict(expected))


def corpus() -> list[NamedGraph]:
    return [named(k) for k in NAMES]


class IngestStream:
    """Iterator over the cubic graphs of a catalog file.

    Lines that do not decode to a cubic graph are skipped and counted in
    ``skipped``; graphs dropped by the bridgeless filter are counted in
    ``filtered``. Reading is lazy, one record at a time.
    """

    def __init__(self, path: str | Path, bridgeless_only: bool = False, fmt: str | None = None):
        self.path = Path(path)
        self.bridgeless_only = bridgeless_only
        self.fmt = fmt or ("cbg" if self.path.suffix == ".cbg" else "g6")
        self.skipped = 0
        self.filtered = 0
        self.read = 0
        # fail early on unreadable files
        self.path.open("rb").close()

    def __iter__(self) -> Iterator[CubicGraph]:
        with self.path.open("r", encoding="ascii", newline=None) as fh:
            records = self._g6(fh) if self.fmt == "g6" else self._cbg(fh)
            for G in records:
                if G is None:
                    continue
                if self.bridgeless_only and not validate(G).is_bridgeless:
                    self.filtered += 1
                    continue
                yield G

    def _skip(self, lineno: int, err: Exception) -> None:
        self.skipped += 1
        log.warning("%s:%d skipped: %s", self.path, lineno, err)

    def _g6(self, fh) -> Iterator[CubicGraph | None]:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            self.read += 1
            try:
                n, edges = decode_graph6(line)
                yield CubicGraph(n, edges)
            except (GraphFormatError, NotCubicError) as err:
                self._skip(lineno, err)
                yield None

    def _cbg(self, fh) -> Iterator[CubicGraph | None]:
        for k, (n, edges) in enumerate(_cbg_records(fh), 1):
            self.read += 1
            try:
                yield CubicGraph(n, edges)
            except (GraphFormatError, NotCubicError) as err:
                self._skip(k, err)
                yield None


def ingest(path: str | Path, bridgeless_only: bool = False, fmt: str | None = None) -> IngestStream:
    return IngestStream(path, bridgeless_only, fmt)
