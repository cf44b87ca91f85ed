"""Multi-fans, linear sequences, shifting, the fan order, stopping colors,
tau-sequences outside a fan, and extended multi-fans.

Every structure keeps a reference to the coloring it was read from; applying
it to a different coloring raises :class:`StaleChainError`.

Notation used in names: ``r`` is the fan center, ``s0`` the far end of the
uncolored edge, ``V(F)`` includes ``r``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .chromatic import DEFAULT_BUDGET, DEFAULT_ORBIT_LIMIT, chromatic_index, enumerate_colorings, find_coloring
from .coloring import (
    ColorSet,
    PartialColoring,
    SharedColor,
    StaleChainError,
    elementary_witness,
    kempe_chain,
    kempe_swap,
)
from .graph import Edge, Graph, edge


class FanError(ValueError):
    pass


class NonElementaryError(FanError):
    def __init__(self, witness: SharedColor):
        super().__init__(f"vertices {witness.u} and {witness.v} both miss color {witness.color}")
        self.witness = witness


# -- sequences -----------------------------------------------------------


@dataclass(frozen=True)
class LinearSequence:
    """``(r, e_0, s_0, ..., e_q, s_q)`` with ``e_i = r s_i`` and the color of
    ``e_i`` missing at ``s_{i-1}`` for ``i >= 1``."""

    center: int
    vertices: tuple[int, ...]
    coloring: PartialColoring

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(edge(self.center, s) for s in self.vertices)

    @property
    def tau(self) -> int | None:
        """Color of the first edge."""
        return self.coloring.color(self.center, self.vertices[0])

    @property
    def last(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)


def sequence_violation(c: PartialColoring, r: int, vertices: Iterable[int]) -> str | None:
    """Why ``(r, s_0, ..)`` is not a linear sequence under ``c``, or ``None``."""
    vs = list(vertices)
    if not vs:
        return "empty sequence"
    if r in vs or len(set(vs)) != len(vs):
        return "vertices not distinct"
    for i, s in enumerate(vs):
        if not c.host.has_edge(r, s):
            return f"{s} is not adjacent to the center {r}"
        if i == 0:
            continue
        col = c.color(r, s)
        if col is None or col not in c.missing_colors(vs[i - 1]):
            return f"color of edge {edge(r, s)} is not missing at {vs[i - 1]}"
    return None


def linear_sequence(c: PartialColoring, r: int, vertices: Iterable[int]) -> LinearSequence:
    vs = tuple(vertices)
    why = sequence_violation(c, r, vs)
    if why is not None:
        raise FanError(why)
    return LinearSequence(r, vs, c)


def shift(c: PartialColoring, seq: LinearSequence, i: int, j: int) -> tuple[PartialColoring, Edge]:
    """Give ``e_t`` the color of ``e_{t+1}`` for ``i <= t < j`` and uncolor
    ``e_j``, which is returned as the dangling edge."""
    if seq.coloring.version != c.version:
        raise StaleChainError("sequence was read from a different coloring")
    q = len(seq.vertices) - 1
    if not 0 <= i <= j <= q:
        raise IndexError(f"shift indices must satisfy 0 <= i <= j <= {q}, got {i}, {j}")
    why = sequence_violation(c, seq.center, seq.vertices)
    if why is not None:
        raise FanError(why)
    es = seq.edges
    changes: dict[Edge, int | None] = {es[t]: c.color(*es[t + 1]) for t in range(i, j)}
    changes[es[j]] = None
    return c.recolor(changes), es[j]


# -- multi-fans ----------------------------------------------------------


@dataclass(frozen=True)
class MultiFan:
    center: int
    vertices: tuple[int, ...]  # s_0 .. s_p
    coloring: PartialColoring
    maximal: bool

    @property
    def s0(self) -> int:
        return self.vertices[0]

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(edge(self.center, s) for s in self.vertices)

    @property
    def vertex_set(self) -> frozenset[int]:
        """V(F), center included."""
        return frozenset(self.vertices) | {self.center}

    def __len__(self) -> int:
        return len(self.vertices) + 1

    def missing(self) -> ColorSet:
        return self.coloring.missing_union(self.vertex_set)


def fan_violation(c: PartialColoring, r: int, vertices: Iterable[int]) -> str | None:
    vs = list(vertices)
    e = c.uncolored_edge
    if e is None or r not in e:
        return "uncolored edge is not at the center"
    if not vs or edge(r, vs[0]) != e:
        return "fan must start with the uncolored edge"
    if r in vs or len(set(vs)) != len(vs):
        return "vertices not distinct"
    miss = c.missing_colors(vs[0]).mask
    for s in vs[1:]:
        col = c.color(r, s)
        if col is None or not (miss >> (col - 1)) & 1:
            return f"color of edge {edge(r, s)} is not missing at an earlier fan vertex"
        miss |= c.missing_colors(s).mask
    return None


def admissible_extensions(c: PartialColoring, r: int, vertices: Iterable[int]) -> list[tuple[int, int]]:
    """``(color, neighbor)`` pairs that could be appended to the fan."""
    vs = list(vertices)
    miss = c.missing_union(vs)
    inside = set(vs) | {r}
    return sorted((col, w) for col, w in c.colors_at(r).items() if w not in inside and col in miss)


def grow_multifan(c: PartialColoring, r: int) -> MultiFan:
    """Maximal multi-fan at ``r`` for the uncolored edge of ``c``.

    Repeatedly appends the admissible edge with the smallest
    ``(color, neighbor)``. The vertex set reached does not depend on that
    order; the sequence does.
    """
    e = c.uncolored_edge
    if e is None or r not in e:
        raise FanError(f"the uncolored edge {e} is not incident to {r}")
    s0 = e[0] if e[1] == r else e[1]
    vs = [s0]
    while True:
        ext = admissible_extensions(c, r, vs)
        if not ext:
            break
        vs.append(ext[0][1])
    return MultiFan(r, tuple(vs), c, True)


def grow_multifan_randomly(c: PartialColoring, r: int, rng: random.Random) -> MultiFan:
    e = c.uncolored_edge
    if e is None or r not in e:
        raise FanError(f"the uncolored edge {e} is not incident to {r}")
    vs = [e[0] if e[1] == r else e[1]]
    while True:
        ext = admissible_extensions(c, r, vs)
        if not ext:
            break
        vs.append(rng.choice(ext)[1])
    return MultiFan(r, tuple(vs), c, True)


# -- fan order -----------------------------------------------------------


@dataclass(frozen=True)
class FanOrder:
    """Strict order on the missing colors of a fan plus the color -> vertex
    locator.

    ``a`` precedes ``b`` when some linear sequence from ``s0`` inside the fan
    has an edge colored ``a`` before a vertex missing ``b``.
    """

    relation: frozenset[tuple[int, int]]
    locator: dict[int, int]
    parent: dict[int, int]

    def precedes(self, a: int, b: int) -> bool:
        return (a, b) in self.relation

    def comparable(self, a: int, b: int) -> bool:
        return (a, b) in self.relation or (b, a) in self.relation

    def locate(self, color: int) -> int:
        return self.locator[color]

    def path_to(self, v: int) -> list[int]:
        """Vertices of the linear sequence from ``s0`` to ``v``."""
        out = [v]
        while out[-1] in self.parent:
            out.append(self.parent[out[-1]])
        return out[::-1]


def fan_order(fan: MultiFan) -> FanOrder:
    c, r = fan.coloring, fan.center
    w = elementary_witness(c, fan.vertex_set)
    if w is not None:
        raise NonElementaryError(w)
    locator: dict[int, int] = {}
    for v in (r,) + fan.vertices:
        for col in c.missing_colors(v):
            locator[col] = v
    parent: dict[int, int] = {}
    for s in fan.vertices[1:]:
        parent[s] = locator[c.color(r, s)]
    children: dict[int, list[int]] = {}
    for s, p in parent.items():
        children.setdefault(p, []).append(s)

    def subtree(v: int) -> list[int]:
        out, todo = [], [v]
        while todo:
            x = todo.pop()
            out.append(x)
            todo.extend(children.get(x, ()))
        return out

    rel: set[tuple[int, int]] = set()
    for s in fan.vertices[1:]:
        a = c.color(r, s)
        for x in subtree(s):
            for b in c.missing_colors(x):
                rel.add((a, b))
    order = FanOrder(frozenset(rel), locator, parent)
    for a, b in rel:
        if a == b:
            raise AssertionError(f"fan order is reflexive at color {a}")
    for a, b in rel:
        for b2, cc in rel:
            if b2 == b and (a, cc) not in rel:
                raise AssertionError(f"fan order not transitive on {a}, {b}, {cc}")
    return order


# -- stopping colors -----------------------------------------------------


@dataclass(frozen=True)
class StoppingColors:
    K: ColorSet
    K_F: ColorSet


def stopping_colors(c: PartialColoring, r: int, fan: MultiFan) -> StoppingColors:
    if fan.center != r or fan.coloring.version != c.version:
        raise StaleChainError("fan does not belong to this coloring and center")
    g = c.host
    d = g.max_degree
    k = ColorSet.of((col for col, x in c.colors_at(r).items() if g.degree(x) == d), c.palette_size)
    return StoppingColors(k, k - fan.missing())


# -- tau-sequences outside a fan ----------------------------------------


@dataclass(frozen=True)
class TauSeqType:
    """Terminal behaviour of an extremal tau-sequence.

    ``tag`` is the first of A, B, C, D whose defining condition holds (``None``
    if none does); ``hits`` lists every condition that holds, so callers can
    audit exclusiveness and exhaustiveness.
    """

    tag: str | None
    hits: tuple[str, ...]
    witness: tuple


def tau_sequences_outside(c: PartialColoring, fan: MultiFan, tau: int) -> list[tuple[LinearSequence, TauSeqType]]:
    """All extremal tau-sequences at the fan center that avoid the fan.

    A sequence stops at the first vertex that misses no color, or misses a
    color already missing at an earlier sequence vertex, on the fan, or equal
    to ``tau``. Non-terminal vertices may miss several colors; each one opens
    a branch, and every root-to-leaf branch is returned.
    """
    if fan.coloring.version != c.version:
        raise StaleChainError("fan was read from a different coloring")
    if not fan.maximal:
        raise FanError("tau-sequences are taken outside a maximal fan")
    r = fan.center
    v0 = c.neighbor_by_color(r, tau)
    if v0 is None or v0 in fan.vertex_set:
        raise FanError(f"color {tau} is not on an edge from {r} to a vertex outside the fan")
    fan_miss = fan.missing()
    stop0 = fan_miss | ColorSet.of([tau], c.palette_size)
    out: list[tuple[LinearSequence, TauSeqType]] = []

    def grow(path: list[int], seen: ColorSet) -> None:
        v = path[-1]
        mv = c.missing_colors(v)
        if not mv or mv & seen:
            seq = LinearSequence(r, tuple(path), c)
            out.append((seq, classify_tau_sequence(c, fan, seq)))
            return
        for col in mv:
            w = c.neighbor_by_color(r, col)
            if w is None or w in fan.vertex_set or w in path:  # pragma: no cover - excluded by maximality
                raise FanError(f"sequence from {path[0]} cannot continue through color {col}")
            grow(path + [w], seen | mv)

    grow([v0], stop0)
    return out


def classify_tau_sequence(c: PartialColoring, fan: MultiFan, seq: LinearSequence) -> TauSeqType:
    tau = seq.tau
    fan_miss = fan.missing()
    vt = seq.last
    m_last = c.missing_colors(vt)
    union_w = elementary_witness(c, list(fan.vertex_set) + list(seq.vertices))
    hits = []
    witness: dict[str, tuple] = {}
    if union_w is None and set(m_last) == {tau}:
        hits.append("A")
        witness["A"] = (vt, tau)
    for v in seq.vertices:
        shared = c.missing_colors(v) & fan_miss
        if shared:
            hits.append("B")
            witness["B"] = (v, shared.min())
            break
    if "B" not in hits:
        w = elementary_witness(c, seq.vertices)
        if w is not None:
            hits.append("C")
            witness["C"] = (w.u, w.v, w.color)
    if not m_last and union_w is None:
        hits.append("D")
        witness["D"] = (vt,)
    tag = hits[0] if hits else None
    return TauSeqType(tag, tuple(hits), witness[tag] if tag else (vt, tuple(m_last)))


# -- extended multi-fans -------------------------------------------------


@dataclass(frozen=True)
class ExtendedMultiFan:
    base: MultiFan
    pivot: int
    pivot_color: int
    # (first vertex v, sequence, type) for every sequence in F'
    extension: tuple[tuple[int, LinearSequence, TauSeqType], ...]
    stopping: StoppingColors

    @property
    def coloring(self) -> PartialColoring:
        return self.base.coloring

    @property
    def extension_vertices(self) -> frozenset[int]:
        """V(F'), center excluded."""
        return frozenset(x for _, seq, _ in self.extension for x in seq.vertices)

    @property
    def vertex_set(self) -> frozenset[int]:
        return self.base.vertex_set | self.extension_vertices

    def sequences_containing(self, v: int) -> list[tuple[int, LinearSequence]]:
        return [(v0, seq) for v0, seq, _ in self.extension if v in seq.vertices]

    def locate(self, color: int, among: Iterable[int] | None = None) -> int | None:
        """The vertex of ``among`` (default V(F u F')) missing ``color``."""
        c = self.coloring
        for v in sorted(self.vertex_set if among is None else among):
            if color in c.missing_colors(v):
                return v
        return None


def qualifying_neighbors(c: PartialColoring, fan: MultiFan, pivot: int, k_f: ColorSet) -> list[int]:
    """Vertices ``v`` outside the fan, adjacent to the center, of degree below
    Delta, adjacent to ``pivot`` through a color not in ``K_F``."""
    g = c.host
    r = fan.center
    out = []
    for v in sorted(g.small_neighbors(pivot) & g.neighbors(r)):
        if v in fan.vertex_set:
            continue
        col = c.color(v, pivot)
        if col is not None and col not in k_f:
            out.append(v)
    return out


def pivot_pairs(c: PartialColoring, fan: MultiFan) -> list[tuple[int, int]]:
    """Every ``(s_h, beta)`` with ``s_h`` a fan vertex other than the center and
    ``beta`` a stopping color missing at ``s_h``."""
    st = stopping_colors(c, fan.center, fan)
    return [(s, b) for s in fan.vertices for b in c.missing_colors(s) & st.K]


def extend_multifan(c: PartialColoring, fan: MultiFan, pivot: int, beta: int) -> ExtendedMultiFan:
    if fan.coloring.version != c.version:
        raise StaleChainError("fan was read from a different coloring")
    if not fan.maximal:
        raise FanError("extension requires a maximal fan")
    if pivot not in fan.vertices:
        raise FanError(f"pivot {pivot} is not a fan vertex")
    st = stopping_colors(c, fan.center, fan)
    if beta not in st.K or beta not in c.missing_colors(pivot):
        raise FanError(f"color {beta} is not a stopping color missing at {pivot}")
    ext = []
    for v in qualifying_neighbors(c, fan, pivot, st.K_F):
        tau = c.color(fan.center, v)
        for seq, typ in tau_sequences_outside(c, fan, tau):
            if set(seq.vertices) & fan.vertex_set:  # pragma: no cover - excluded by construction
                raise FanError(f"sequence {seq.vertices} meets the fan")
            ext.append((v, seq, typ))
    return ExtendedMultiFan(fan, pivot, beta, tuple(ext), st)


# -- maximum multi-fans --------------------------------------------------


@dataclass
class MaximumFan:
    coloring: PartialColoring
    fan: MultiFan
    certified: bool
    size: int
    maximizers: list[MultiFan]
    colorings_examined: int


def maximum_multifan(
    g: Graph,
    e: Edge,
    r: int,
    *,
    budget: int = DEFAULT_BUDGET,
    limit: int = DEFAULT_ORBIT_LIMIT,
    restarts: int = 512,
    seed: int = 0,
    check_critical: bool = True,
) -> MaximumFan:
    """Largest maximal fan at ``r`` over all Delta-colorings of ``G - e``.

    Exact (``certified``) when the orbit enumeration finishes; otherwise the
    best fan seen over the partial enumeration and ``restarts`` random
    Kempe-walk colorings.
    """
    e = edge(*e)
    if r not in e:
        raise FanError(f"{r} is not an endpoint of {e}")
    d = g.max_degree
    if check_critical:
        from .chromatic import is_critical_edge

        cert = chromatic_index(g, budget=budget)
        if cert.chi_prime != d + 1:
            raise FanError("graph is class 1")
        if not is_critical_edge(g, e, budget=budget, chi=cert.chi_prime):
            raise FanError(f"edge {e} is not critical")
    orbits = enumerate_colorings(g, e, d, budget=budget, limit=limit)
    fans = [grow_multifan(c, r) for c in orbits]
    if not orbits.complete:
        rng = random.Random(seed)
        pool = list(orbits.colorings)
        if not pool:
            found, _ = find_coloring(g, d, skip=e, budget=budget)
            if found is not None:
                pool.append(found)
        for _ in range(restarts if pool else 0):
            c = random_kempe_walk(rng.choice(pool), rng, steps=2 * g.m)
            fans.append(grow_multifan(c, r))
    if not fans:
        raise FanError(f"no {d}-edge-coloring of G - {e} found")
    size = max(len(f) for f in fans)
    best = [f for f in fans if len(f) == size]
    return MaximumFan(best[0].coloring, best[0], orbits.complete, size, best, len(fans))


def random_kempe_walk(c: PartialColoring, rng: random.Random, steps: int) -> PartialColoring:
    k = c.palette_size
    if k < 2:
        return c
    for _ in range(steps):
        v = rng.randrange(c.host.n)
        a, b = rng.sample(range(1, k + 1), 2)
        c = kempe_swap(c, kempe_chain(c, v, a, b))
    return c


# -- text rendering ------------------------------------------------------


def format_fan(fan: MultiFan, order: FanOrder | None = None, stopping: StoppingColors | None = None) -> str:
    c, r = fan.coloring, fan.center
    lines = [f"multi-fan center={r} maximal={str(fan.maximal).lower()}"]
    lines.append(f"  {r}  missing={c.missing_colors(r)!r}")
    for s in fan.vertices:
        col = c.color(r, s)
        lines.append(f"  {r}-{s}:{'-' if col is None else col} -> {s}  missing={c.missing_colors(s)!r}")
    if order is not None:
        loc = ", ".join(f"{col}->{v}" for col, v in sorted(order.locator.items()))
        rel = ", ".join(f"{a}<{b}" for a, b in sorted(order.relation))
        lines.append(f"  locator: {{{loc}}}")
        lines.append(f"  order: {{{rel}}}")
    if stopping is not None:
        lines.append(f"  stopping K={stopping.K!r} K_F={stopping.K_F!r}")
    return "\n".join(lines)


def format_extended(x: ExtendedMultiFan) -> str:
    c, r = x.coloring, x.base.center
    lines = [f"extended multi-fan pivot={x.pivot} beta={x.pivot_color} sequences={len(x.extension)}"]
    for v0, seq, typ in x.extension:
        body = " ".join(f"{r}-{s}:{c.color(r, s)}->{s}{c.missing_colors(s)!r}" for s in seq.vertices)
        lines.append(f"  from {v0} type={typ.tag or '?'}: {body}")
    return "\n".join(lines)


__all__ = [
    "ExtendedMultiFan",
    "FanError",
    "FanOrder",
    "LinearSequence",
    "MaximumFan",
    "MultiFan",
    "NonElementaryError",
    "StoppingColors",
    "TauSeqType",
    "admissible_extensions",
    "classify_tau_sequence",
    "extend_multifan",
    "fan_order",
    "fan_violation",
    "format_extended",
    "format_fan",
    "grow_multifan",
    "linear_sequence",
    "maximum_multifan",
    "pivot_pairs",
    "qualifying_neighbors",
    "sequence_violation",
    "shift",
    "stopping_colors",
    "tau_sequences_outside",
]
