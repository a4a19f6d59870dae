"""Glueing K4 and Petersen gadgets along base edges, and the reductions built on it.

Glueing ``(H, u, v)`` onto an edge ``xy`` removes ``xy`` and ``uv`` and adds
the clone edges ``xu`` and ``yv``. Each gadget is attached by its canonical
first edge. A chain of gadgets on one base edge is built by always glueing
the next gadget onto the largest clone edge (in canonical pair order) of the
chain built so far.

Coverage accounting: a base edge ``e`` with ``a`` K4 copies and ``b``
Petersen copies owns ``a + b + 1`` clone edges, all of which lie in a
perfect matching or none do. Gadget profiles count only a copy's retained
edges (all but the glued one), so the per-edge contribution to a union is
``(a + b + 1)*[k >= 1] + a*f_K4[k][t-k] + b*f_P[k][t-k]`` where ``k`` is the
number of base matchings containing ``e``. Per-copy counts that attribute
one clone edge to each copy give the same totals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache, partial
from itertools import combinations_with_replacement
from typing import Sequence

from ._parallel import chunk_ranges, ordered_map
from .corpus import k4, petersen
from .cover import MtResult, mt_exact
from .errors import DomainError, InconsistencyError
from .graph import CubicGraph, emit_edge_list, is_3_edge_colorable
from .matchings import Matching, MatchingList, enumerate_pms, is_perfect_matching


class Gadget(str, Enum):
    K4 = "k4"
    PETERSEN = "petersen"

    @property
    def graph(self) -> CubicGraph:
        return _gadget_graph(self)

    @property
    def retained(self) -> int:
        return self.graph.m - 1


@lru_cache(maxsize=None)
def _gadget_graph(kind: Gadget) -> CubicGraph:
    return k4() if kind is Gadget.K4 else petersen()


@lru_cache(maxsize=None)
def _gadget_pms(kind: Gadget) -> MatchingList:
    return enumerate_pms(_gadget_graph(kind))


@dataclass(frozen=True)
class GlueRecipe:
    base: CubicGraph
    per_edge: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.per_edge) != self.base.m:
            raise DomainError(f"recipe has {len(self.per_edge)} entries for {self.base.m} edges")
        if any(a < 0 or b < 0 for a, b in self.per_edge):
            raise DomainError("gadget counts must be non-negative")

    @classmethod
    def uniform(cls, base: CubicGraph, a: int, b: int) -> "GlueRecipe":
        return cls(base, tuple((a, b) for _ in range(base.m)))

    @classmethod
    def single(cls, base: CubicGraph, e: int, kind: Gadget | str) -> "GlueRecipe":
        if not 0 <= e < base.m:
            raise DomainError(f"edge index {e} out of range 0..{base.m - 1}")
        kind = Gadget(kind)
        per = [(0, 0)] * base.m
        per[e] = (1, 0) if kind is Gadget.K4 else (0, 1)
        return cls(base, tuple(per))

    @property
    def edge_count(self) -> int:
        return sum(6 * a + 15 * b + 1 for a, b in self.per_edge)


@dataclass(frozen=True)
class GadgetCopy:
    kind: Gadget
    base_edge: int
    vertex_offset: int
    # gadget edge index -> edge index in the glued graph; None for the glued edge
    edge_map: tuple[int | None, ...]


@dataclass(frozen=True)
class GluedGraph:
    graph: CubicGraph
    recipe: GlueRecipe
    clones: tuple[tuple[int, ...], ...]
    copies: tuple[GadgetCopy, ...]
    clone_masks: tuple[int, ...] = field(repr=False, compare=False, default=())

    def trace(self) -> dict:
        return {
            "schema": "mcover-trace/1",
            "base_n": self.recipe.base.n,
            "base_m": self.recipe.base.m,
            "clones": [list(c) for c in self.clones],
            "copies": [
                {
                    "type": c.kind.value,
                    "base_edge": c.base_edge,
                    "vertices": [c.vertex_offset, c.vertex_offset + c.kind.graph.n],
                    "edges": [x for x in c.edge_map],
                }
                for c in self.copies
            ],
        }

    def write(self, path: str) -> None:
        """Write the glued graph as ``.cbg`` plus a ``.trace.json`` sidecar."""
        with open(path, "w", newline="\n") as fh:
            fh.write(emit_edge_list(self.graph))
        stem = path[:-4] if path.endswith(".cbg") else path
        with open(stem + ".trace.json", "w", newline="\n") as fh:
            json.dump(self.trace(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def glue_all(recipe: GlueRecipe) -> GluedGraph:
    base = recipe.base
    nxt = base.n
    raw: list[tuple[int, int]] = []
    clone_raw: list[list[int]] = []
    copy_raw: list[tuple[Gadget, int, int, list[int | None]]] = []
    for e, ((x, y), (a, b)) in enumerate(zip(base.edges, recipe.per_edge)):
        chain = [(x, y)]
        pending = []
        for kind in [Gadget.K4] * a + [Gadget.PETERSEN] * b:
            H = kind.graph
            p, q = max(chain)
            chain.remove((p, q))
            u, v = H.edges[0]
            chain += [_norm(p, u + nxt), _norm(q, v + nxt)]
            emap: list[int | None] = [None]
            for hu, hv in H.edges[1:]:
                emap.append(len(raw))
                raw.append((hu + nxt, hv + nxt))
            pending.append((kind, e, nxt, emap))
            nxt += H.n
        clone_raw.append([])
        for pair in chain:
            clone_raw[-1].append(len(raw))
            raw.append(pair)
        copy_raw.extend(pending)
    G, pos = CubicGraph.with_positions(nxt, raw)
    clones = tuple(tuple(sorted(pos[i] for i in c)) for c in clone_raw)
    copies = tuple(
        GadgetCopy(kind, e, off, tuple(None if i is None else pos[i] for i in emap))
        for kind, e, off, emap in copy_raw
    )
    masks = tuple(sum(1 << i for i in c) for c in clones)
    return GluedGraph(G, recipe, clones, copies, masks)


def _norm(p: int, q: int) -> tuple[int, int]:
    return (p, q) if p < q else (q, p)


def glue_one(G: CubicGraph, e: int, kind: Gadget | str) -> GluedGraph:
    return glue_all(GlueRecipe.single(G, e, kind))


def restrict_pm(Mp: Matching | int, glued: GluedGraph) -> tuple[Matching, tuple[Matching, ...]]:
    """Project a perfect matching of the glued graph to the base and every copy."""
    bits = Mp.bits if isinstance(Mp, Matching) else Mp
    base_bits = 0
    for e, mask in enumerate(glued.clone_masks):
        hit = bits & mask
        if hit == mask:
            base_bits |= 1 << e
        elif hit:
            raise InconsistencyError(f"clone chain of base edge {e} is partially matched")
    per_copy = []
    for c in glued.copies:
        cb = 0
        for j, g in enumerate(c.edge_map):
            if g is None:
                if base_bits >> c.base_edge & 1:
                    cb |= 1 << j
            elif bits >> g & 1:
                cb |= 1 << j
        if not is_perfect_matching(c.kind.graph, cb):
            raise InconsistencyError(f"restriction to a {c.kind.value} copy is not a perfect matching")
        per_copy.append(Matching(cb))
    if not is_perfect_matching(glued.recipe.base, base_bits):
        raise InconsistencyError("restriction to the base graph is not a perfect matching")
    return Matching(base_bits), tuple(per_copy)


# -- gadget profiles -------------------------------------------------------


@dataclass(frozen=True)
class GadgetProfile:
    """Best retained-edge coverage in one gadget copy.

    ``values[k_in, k_out]`` maximises over ``k_in`` matchings through the
    glued edge and ``k_out`` avoiding it, repeats allowed. ``witness`` holds
    the lexicographically first maximising index choice into the
    gadget's matching list.
    """

    gadget: Gadget
    t: int
    retained: int
    values: dict[tuple[int, int], int]
    witness: dict[tuple[int, int], tuple[tuple[int, ...], tuple[int, ...]]]

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.values[key]

    def f(self, k_in: int, k_out: int) -> int:
        return self.values[k_in, k_out]


@lru_cache(maxsize=None)
def gadget_profile(kind: Gadget | str, t: int) -> GadgetProfile:
    kind = Gadget(kind)
    if not 1 <= t <= 6:
        raise DomainError(f"gadget profiles are tabulated for t in 1..6, got {t}")
    pms = _gadget_pms(kind)
    retained_mask = ~1  # glued edge is canonical edge 0
    through = [i for i, M in enumerate(pms) if 0 in M]
    avoid = [i for i, M in enumerate(pms) if 0 not in M]
    values = {}
    witness = {}
    for k_in in range(t + 1):
        k_out = t - k_in
        best, arg = -1, None
        for ins in combinations_with_replacement(through, k_in):
            for outs in combinations_with_replacement(avoid, k_out):
                u = 0
                for i in ins + outs:
                    u |= pms[i].bits
                size = (u & retained_mask).bit_count()
                if size > best:
                    best, arg = size, (ins, outs)
        values[k_in, k_out] = best
        witness[k_in, k_out] = arg
    return GadgetProfile(kind, t, kind.retained, values, witness)


def lift_pms(base_ms: Sequence[Matching], glued: GluedGraph) -> tuple[Matching, ...]:
    """Assemble matchings of the glued graph from base matchings.

    Each copy gets the profile-optimal gadget matchings for its status
    vector, so the union of the lift attains the compositional objective.
    """
    t = len(base_ms)
    base_bits = [M.bits for M in base_ms]
    out = [0] * t
    for e, mask in enumerate(glued.clone_masks):
        for i, b in enumerate(base_bits):
            if b >> e & 1:
                out[i] |= mask
    for c in glued.copies:
        prof = gadget_profile(c.kind, t)
        status = [b >> c.base_edge & 1 for b in base_bits]
        k_in = sum(status)
        ins, outs = prof.witness[k_in, t - k_in]
        ins, outs = list(ins), list(outs)
        pms = _gadget_pms(c.kind)
        for i, s in enumerate(status):
            gi = ins.pop(0) if s else outs.pop(0)
            for j in pms[gi].edges:
                g = c.edge_map[j]
                if g is not None:
                    out[i] |= 1 << g
    return tuple(Matching(b) for b in out)


# -- compositional m_t -----------------------------------------------------


@dataclass(frozen=True)
class GluedMtResult(MtResult):
    base_witness: tuple[Matching, ...]
    covered: int
    edges: int


def _edge_tables(recipe: GlueRecipe, t: int) -> list[list[int]]:
    fk = gadget_profile(Gadget.K4, t)
    fp = gadget_profile(Gadget.PETERSEN, t)
    tables = []
    for a, b in recipe.per_edge:
        tables.append([
            (a + b + 1) * (k >= 1) + a * fk[k, t - k] + b * fp[k, t - k] for k in range(t + 1)
        ])
    return tables


def _glued_task(edge_lists, tables, t, rng):
    lo, hi = rng
    N = len(edge_lists)
    base0 = sum(tab[0] for tab in tables)
    best, arg = -1, None
    for first in range(lo, hi):
        for rest in combinations_with_replacement(range(first, N), t - 1):
            combo = (first,) + rest
            depth: dict[int, int] = {}
            for i in combo:
                for e in edge_lists[i]:
                    depth[e] = depth.get(e, 0) + 1
            total = base0
            for e, k in depth.items():
                tab = tables[e]
                total += tab[k] - tab[0]
            if total > best:
                best, arg = total, combo
    return best, arg


def mt_glued_exact(
    recipe: GlueRecipe,
    t: int,
    base_ms: MatchingList,
    workers: int = 1,
    glued: GluedGraph | None = None,
) -> GluedMtResult:
    """Exact m_t of the glued graph from base matchings and gadget profiles.

    Maximises the per-edge objective over all ``t``-multisets of base
    matchings; the witness is the lift of the lexicographically first
    optimal multiset.
    """
    ms = list(base_ms)
    if not ms:
        raise DomainError("base graph has no perfect matchings")
    tables = _edge_tables(recipe, t)
    edge_lists = [M.edges for M in ms]
    ranges = chunk_ranges(len(ms), workers * 4 if workers > 1 else 1)
    parts = ordered_map(partial(_glued_task, edge_lists, tables, t), ranges, workers)
    best, arg = -1, None
    for value, combo in parts:
        if value > best:
            best, arg = value, combo
    E = recipe.edge_count
    base_witness = tuple(ms[i] for i in arg)
    if glued is None:
        glued = glue_all(recipe)
    witness = lift_pms(base_witness, glued)
    return GluedMtResult(
        t=t,
        value=Fraction(best, E),
        witness=witness,
        exact=getattr(base_ms, "complete", True),
        base_witness=base_witness,
        covered=best,
        edges=E,
    )


# -- reductions ------------------------------------------------------------

_INTERVALS = {
    2: (Fraction(3, 5), Fraction(2, 3)),
    3: (Fraction(4, 5), Fraction(1)),
    4: (Fraction(14, 15), Fraction(1)),
}


@dataclass(frozen=True)
class ReductionParams:
    """Gadget counts for deciding ``m_t(G) > tau`` through a glued graph.

    ``lower`` is what a yes-instance reaches, ``upper`` bounds every
    no-instance; ``upper < tau < lower`` holds by construction.
    """

    t: int
    tau: Fraction
    m: int
    a: int
    b: int
    lower: Fraction
    upper: Fraction

    @property
    def edges(self) -> int:
        return self.m * (6 * self.a + 15 * self.b + 1)


def parse_rational(text: str | Fraction) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are rejected."""
    if isinstance(text, Fraction):
        return text
    s = str(text).strip()
    if any(c in s for c in ".eE"):
        raise DomainError(f"threshold must be an exact rational p/q, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a rational number: {s!r}") from None


def reduction_params(m: int, t: int, tau: Fraction | str) -> ReductionParams:
    tau = parse_rational(tau)
    if t not in _INTERVALS:
        raise DomainError(f"reductions exist for t in 2, 3, 4; got {t}")
    lo, hi = _INTERVALS[t]
    if not lo < tau < hi:
        raise DomainError(f"tau={tau} outside the open interval ({lo}, {hi}) for t={t}")
    if m <= 0:
        raise DomainError("base graph must have edges")
    if t == 2:
        a = m // 2 + 1
        b = int(a * (4 - 6 * tau) / (15 * tau - 9))
        num = 4 * a + 9 * b + Fraction(2, 3)
    elif t == 3:
        a = (3 * m) // 2 + 1
        b = int(a * (6 - 6 * tau) / (15 * tau - 12))
        num = Fraction(6 * a + 12 * b + 1)
    else:
        a = m // 2 + 1
        b = int(a * (6 - 6 * tau) / (15 * tau - 14))
        num = Fraction(6 * a + 14 * b + 1)
    den = 6 * a + 15 * b + 1
    lower = num / den
    slack = Fraction(2 * a, m * den)
    upper = lower - slack
    if not (tau < lower < tau + slack):
        raise InconsistencyError(f"sandwich bound fails for m={m}, t={t}, tau={tau}")
    return ReductionParams(t, tau, m, a, b, lower, upper)


@dataclass(frozen=True)
class ReductionDecision:
    params: ReductionParams
    value: Fraction
    edges: int
    verdict: bool
    cross_check: str
    cross_value: bool
    result: GluedMtResult

    @property
    def agree(self) -> bool:
        return self.verdict == self.cross_value

    def summary(self) -> str:
        t = self.params.t
        rel = ">" if self.verdict else "=" if self.value == self.params.tau else "<"
        return f"m{t}(G')={self.value} {rel} {self.params.tau}; {self.cross_check}: {str(self.cross_value).lower()}"


def decide_via_reduction(
    G: CubicGraph,
    t: int,
    tau: Fraction | str,
    base_ms: MatchingList | None = None,
    workers: int = 1,
) -> ReductionDecision:
    params = reduction_params(G.m, t, tau)
    if base_ms is None:
        base_ms = enumerate_pms(G)
    recipe = GlueRecipe.uniform(G, params.a, params.b)
    res = mt_glued_exact(recipe, t, base_ms, workers=workers)
    if t in (2, 3):
        name, cross = "base 3-edge-colorable", is_3_edge_colorable(G)
    else:
        name, cross = "base m4=1", mt_exact(G, 4, base_ms).value == 1
    return ReductionDecision(params, res.value, res.edges, res.value > params.tau, name, cross, res)
