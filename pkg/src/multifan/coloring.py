"""Partial proper edge colorings, missing colors, and Kempe chains.

A :class:`PartialColoring` is a value: every transformation returns a new
coloring with a fresh ``version`` number. Chains (and the fan structures built
on top of them) remember the version they were read from, and operations
refuse to apply them to any other coloring.

Colors are the integers ``1..palette_size``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .graph import Edge, Graph, edge

_versions = itertools.count(1)


class ColoringError(ValueError):
    pass


class StaleChainError(ColoringError):
    """A chain or sequence was applied to a coloring other than its source."""


@dataclass(frozen=True)
class ColorSet:
    """Set of palette colors as a bitmask (bit ``c - 1`` for color ``c``)."""

    mask: int
    palette_size: int

    @classmethod
    def of(cls, colors: Iterable[int], palette_size: int) -> ColorSet:
        mask = 0
        for c in colors:
            mask |= 1 << (c - 1)
        return cls(mask, palette_size)

    def __iter__(self) -> Iterator[int]:
        m, c = self.mask, 1
        while m:
            if m & 1:
                yield c
            m >>= 1
            c += 1

    def __contains__(self, c: object) -> bool:
        return isinstance(c, int) and c >= 1 and bool(self.mask >> (c - 1) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __and__(self, other: ColorSet) -> ColorSet:
        return ColorSet(self.mask & other.mask, self.palette_size)

    def __or__(self, other: ColorSet) -> ColorSet:
        return ColorSet(self.mask | other.mask, self.palette_size)

    def __sub__(self, other: ColorSet) -> ColorSet:
        return ColorSet(self.mask & ~other.mask, self.palette_size)

    def complement(self) -> ColorSet:
        return ColorSet(((1 << self.palette_size) - 1) & ~self.mask, self.palette_size)

    def min(self) -> int:
        if not self.mask:
            raise ValueError("empty color set")
        return (self.mask & -self.mask).bit_length()

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


@dataclass(frozen=True)
class Violation:
    vertex: int | None
    color: int | None
    message: str

    def __str__(self) -> str:
        return self.message


class PartialColoring:
    """Proper edge coloring of ``host`` minus a set of uncolored edges.

    In the common case there is a single uncolored edge ``e`` (a coloring of
    ``G - e``); shifting can leave a second one dangling.
    """

    __slots__ = ("host", "palette_size", "_assign", "_at", "_uncolored", "version")

    def __init__(
        self,
        host: Graph,
        palette_size: int,
        assignment: Mapping[Edge, int],
        uncolored: Iterable[Edge] = (),
        *,
        check: bool = True,
    ):
        self.host = host
        self.palette_size = palette_size
        self._assign = {edge(*e): c for e, c in assignment.items()}
        self._uncolored = frozenset(edge(*e) for e in uncolored)
        at: list[dict[int, int]] = [{} for _ in range(host.n)]
        self.version = next(_versions)
        self._at = at
        if check:
            v = self._bookkeeping_violation()
            if v is not None:
                raise ColoringError(str(v))
        for (a, b), c in self._assign.items():
            if c in at[a] or c in at[b]:
                if check:
                    x = a if c in at[a] else b
                    raise ColoringError(f"color {c} used twice at vertex {x}")
            at[a][c] = b
            at[b][c] = a

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_edge_colors(
        cls,
        host: Graph,
        palette_size: int,
        colors: Mapping[Edge, int],
        uncolored_edge: Edge | None = None,
    ) -> PartialColoring:
        return cls(host, palette_size, colors, [] if uncolored_edge is None else [uncolored_edge])

    def _derive(self, assignment: dict[Edge, int], uncolored: Iterable[Edge]) -> PartialColoring:
        return PartialColoring(self.host, self.palette_size, assignment, uncolored, check=False)

    # -- queries ---------------------------------------------------------

    @property
    def assignment(self) -> dict[Edge, int]:
        return dict(self._assign)

    @property
    def uncolored(self) -> frozenset[Edge]:
        return self._uncolored

    @property
    def uncolored_edge(self) -> Edge | None:
        if len(self._uncolored) > 1:
            raise ColoringError(f"coloring has {len(self._uncolored)} uncolored edges")
        return next(iter(self._uncolored), None)

    def color(self, u: int, v: int) -> int | None:
        return self._assign.get(edge(u, v))

    def neighbor_by_color(self, v: int, c: int) -> int | None:
        """The vertex joined to ``v`` by the edge of color ``c``, if any."""
        return self._at[v].get(c)

    def colors_at(self, v: int) -> dict[int, int]:
        """Map color -> neighbor for the colored edges at ``v``."""
        return dict(self._at[v])

    def present_colors(self, v: int) -> ColorSet:
        self._check_vertex(v)
        return ColorSet.of(self._at[v], self.palette_size)

    def missing_colors(self, v: int) -> ColorSet:
        return self.present_colors(v).complement()

    def missing_union(self, vs: Iterable[int]) -> ColorSet:
        mask = 0
        for v in vs:
            mask |= self.missing_colors(v).mask
        return ColorSet(mask, self.palette_size)

    def color_classes(self) -> dict[int, list[Edge]]:
        classes: dict[int, list[Edge]] = {}
        for e, c in sorted(self._assign.items()):
            classes.setdefault(c, []).append(e)
        return classes

    def colors_used(self) -> set[int]:
        return set(self._assign.values())

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.host.n:
            raise KeyError(f"unknown vertex {v}")

    # -- transformations -------------------------------------------------

    def recolor(self, changes: Mapping[Edge, int | None]) -> PartialColoring:
        """New coloring with the given edges (re)colored; ``None`` uncolors.

        The result must be proper.
        """
        assign = dict(self._assign)
        unc = set(self._uncolored)
        for e, c in changes.items():
            e = edge(*e)
            if e not in self.host.edges:
                raise ColoringError(f"edge {e} not in host graph")
            if c is None:
                assign.pop(e, None)
                unc.add(e)
            else:
                assign[e] = c
                unc.discard(e)
        out = self._derive(assign, unc)
        v = validate(out)
        if v is not None:
            raise ColoringError(f"recoloring is not proper: {v}")
        return out

    def permute_colors(self, perm: Mapping[int, int]) -> PartialColoring:
        return self._derive({e: perm[c] for e, c in self._assign.items()}, self._uncolored)

    def canonical_key(self) -> tuple[int, ...]:
        """Lexicographically least color string (over sorted host edges, 0 for
        uncolored) among all color permutations of this coloring."""
        relabel: dict[int, int] = {}
        out = []
        for e in self.host.sorted_edges():
            c = self._assign.get(e)
            if c is None:
                out.append(0)
                continue
            if c not in relabel:
                relabel[c] = len(relabel) + 1
            out.append(relabel[c])
        return tuple(out)

    def canonical(self) -> PartialColoring:
        relabel: dict[int, int] = {}
        for e in self.host.sorted_edges():
            c = self._assign.get(e)
            if c is not None and c not in relabel:
                relabel[c] = len(relabel) + 1
        nxt = len(relabel) + 1
        for c in range(1, self.palette_size + 1):
            if c not in relabel:
                relabel[c] = nxt
                nxt += 1
        return self.permute_colors(relabel)

    def same_assignment(self, other: PartialColoring) -> bool:
        return self._assign == other._assign and self._uncolored == other._uncolored

    def __repr__(self) -> str:
        return (
            f"PartialColoring(palette={self.palette_size}, uncolored={sorted(self._uncolored)}, "
            f"assignment={dict(sorted(self._assign.items()))})"
        )

    def _bookkeeping_violation(self) -> Violation | None:
        host_edges = self.host.edges
        for e, c in self._assign.items():
            if e not in host_edges:
                return Violation(e[0], c, f"edge {e} colored but not in host graph")
            if not 1 <= c <= self.palette_size:
                return Violation(e[0], c, f"edge {e} has color {c} outside palette 1..{self.palette_size}")
            if e in self._uncolored:
                return Violation(e[0], c, f"edge {e} both colored and marked uncolored")
        for e in self._uncolored:
            if e not in host_edges:
                return Violation(e[0], None, f"uncolored edge {e} not in host graph")
        missing = host_edges - self._assign.keys() - self._uncolored
        if missing:
            e = min(missing)
            return Violation(e[0], None, f"edge {e} has no color and is not marked uncolored")
        return None


def validate(c: PartialColoring) -> Violation | None:
    """``None`` if ``c`` is proper with consistent bookkeeping, else the first
    violation found."""
    v = c._bookkeeping_violation()
    if v is not None:
        return v
    seen: dict[tuple[int, int], Edge] = {}
    for e, col in sorted(c._assign.items()):
        for x in e:
            if (x, col) in seen:
                return Violation(x, col, f"vertex {x} has two edges colored {col}: {seen[x, col]} and {e}")
            seen[x, col] = e
    return None


def is_elementary(c: PartialColoring, xs: Iterable[int]) -> bool:
    return elementary_witness(c, xs) is None


@dataclass(frozen=True)
class SharedColor:
    """Two distinct vertices missing the same color."""

    u: int
    v: int
    color: int


def elementary_witness(c: PartialColoring, xs: Iterable[int]) -> SharedColor | None:
    """First pair of distinct vertices in ``xs`` sharing a missing color
    (smallest color first), or ``None`` when ``xs`` is elementary."""
    owner: dict[int, int] = {}
    clash: SharedColor | None = None
    for x in dict.fromkeys(xs):
        for col in c.missing_colors(x):
            if col in owner:
                if clash is None or col < clash.color:
                    clash = SharedColor(owner[col], x, col)
            else:
                owner[col] = x
    return clash


# -- Kempe chains --------------------------------------------------------


@dataclass(frozen=True)
class Chain:
    """An (alpha, beta)-chain: a path or even cycle alternating two colors.

    ``vertices`` lists the chain in order; for a cycle the closing edge back
    to ``vertices[0]`` is the last entry of ``edges``.
    """

    kind: str  # "path" | "cycle"
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    colors: tuple[int, int]
    version: int

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def ends(self) -> tuple[int, int] | None:
        if self.kind == "cycle":
            return None
        return self.vertices[0], self.vertices[-1]

    def __contains__(self, v: object) -> bool:
        return v in self.vertices


def _walk(c: PartialColoring, start: int, first: int, other: int) -> tuple[list[int], bool]:
    """Follow colors first, other, first, ... from ``start``; returns the
    visited vertices (excluding ``start``) and whether we came back."""
    out = []
    cur, col = start, first
    while True:
        nxt = c.neighbor_by_color(cur, col)
        if nxt is None:
            return out, False
        if nxt == start:
            return out, True
        out.append(nxt)
        cur = nxt
        col = other if col == first else first


def kempe_chain(c: PartialColoring, v: int, alpha: int, beta: int) -> Chain:
    if alpha == beta:
        raise ColoringError("chain colors must differ")
    for col in (alpha, beta):
        if not 1 <= col <= c.palette_size:
            raise ColoringError(f"color {col} outside palette")
    c._check_vertex(v)
    fwd, closed = _walk(c, v, alpha, beta)
    if closed:
        cyc = [v] + fwd
        i = cyc.index(min(cyc))
        cyc = cyc[i:] + cyc[:i]
        if len(cyc) > 2 and cyc[-1] < cyc[1]:
            cyc = [cyc[0]] + cyc[:0:-1]
        verts = tuple(cyc)
        edges = tuple(edge(verts[t], verts[(t + 1) % len(verts)]) for t in range(len(verts)))
        return Chain("cycle", verts, edges, (alpha, beta), c.version)
    back, _ = _walk(c, v, beta, alpha)
    path = back[::-1] + [v] + fwd
    if path[0] != v and path[-1] != v and path[-1] < path[0]:
        path.reverse()
    if path[-1] == v and path[0] != v:
        path.reverse()
    verts = tuple(path)
    edges = tuple(edge(verts[t], verts[t + 1]) for t in range(len(verts) - 1))
    return Chain("path", verts, edges, (alpha, beta), c.version)


def kempe_swap(c: PartialColoring, chain: Chain) -> PartialColoring:
    if chain.version != c.version:
        raise StaleChainError(f"chain read from coloring v{chain.version}, applied to v{c.version}")
    a, b = chain.colors
    assign = dict(c._assign)
    for e in chain.edges:
        assign[e] = b if assign[e] == a else a
    return c._derive(assign, c._uncolored)


def apply_alpha_to_beta(c: PartialColoring, v: int, alpha: int, beta: int) -> PartialColoring:
    """The alpha -> beta operation at ``v``: swap the (alpha, beta)-chain
    through ``v``, which requires ``alpha`` to be missing at ``v``."""
    if alpha not in c.missing_colors(v):
        raise ColoringError(f"color {alpha} is not missing at vertex {v}")
    return kempe_swap(c, kempe_chain(c, v, alpha, beta))


def are_linked(c: PartialColoring, x: int, y: int, alpha: int, beta: int) -> bool:
    if alpha == beta:
        raise ColoringError("chain colors must differ")
    if x == y:
        return True
    return y in kempe_chain(c, x, alpha, beta).vertex_set


# -- text format ---------------------------------------------------------


def dump_coloring(c: PartialColoring) -> str:
    lines = [f"palette:{c.palette_size}"]
    lines += [f"{u}-{v}:{col}" for (u, v), col in sorted(c._assign.items())]
    lines += [f"uncolored:{u}-{v}" for u, v in sorted(c._uncolored)]
    return "\n".join(lines) + "\n"


def _parse_pair(text: str, lineno: int) -> Edge:
    try:
        a, b = text.split("-")
        return edge(int(a), int(b))
    except ValueError:
        raise ColoringError(f"line {lineno}: bad edge {text!r}") from None


def parse_coloring(text: str, host: Graph, palette_size: int | None = None) -> PartialColoring:
    """Parse the ``u-v:color`` / ``uncolored:u-v`` text format.

    Edges of ``host`` that are not mentioned become uncolored. The palette is
    taken from a ``palette:k`` line, then the argument, then Delta(host).
    """
    assign: dict[Edge, int] = {}
    unc: list[Edge] = []
    palette = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ColoringError(f"line {lineno}: expected 'u-v:color', got {raw!r}")
        key, val = key.strip(), val.strip()
        if key == "palette":
            palette = int(val)
        elif key == "uncolored":
            unc.append(_parse_pair(val, lineno))
        else:
            e = _parse_pair(key, lineno)
            if e not in host.edges:
                raise ColoringError(f"line {lineno}: edge {e} not in graph")
            try:
                assign[e] = int(val)
            except ValueError:
                raise ColoringError(f"line {lineno}: bad color {val!r}") from None
    if palette is None:
        palette = palette_size if palette_size is not None else host.max_degree
    unc += [e for e in host.edges if e not in assign and e not in unc]
    c = PartialColoring(host, palette, assign, unc, check=False)
    v = validate(c)
    if v is not None:
        raise ColoringError(str(v))
    return c
