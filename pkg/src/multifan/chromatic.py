"""Exact chromatic index, class 1/2, critical edges and critical graphs.

Criticality only needs single-edge deletions: a proper subgraph ``H`` of a
graph ``G`` without isolated vertices either misses some edge ``e``, and then
``chi'(H) <= chi'(G - e)``, or keeps every edge, and then it only lost
isolated vertices, which ``G`` does not have when it is connected. So a
connected class 2 graph is critical iff ``chi'(G - e) < chi'(G)`` for every
edge ``e``.

Searches have a node budget. Running out raises :class:`Undecided`; no
answer is ever guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import kernels
from .coloring import PartialColoring, validate
from .graph import Edge, Graph, edge

DEFAULT_BUDGET = 10**8
DEFAULT_ORBIT_LIMIT = 200_000


class Undecided(RuntimeError):
    """The search ran out of budget before reaching a verdict."""

    def __init__(self, message: str, nodes: int):
        super().__init__(message)
        self.nodes = nodes


@dataclass(frozen=True)
class ChromaticCertificate:
    chi_prime: int
    witness: PartialColoring
    lower_bound_proof: str  # "delta-bound" | "search-exhaustion"
    nodes: int = 0

    @property
    def max_degree(self) -> int:
        return self.witness.host.max_degree


def search_order(g: Graph, edges: list[Edge] | None = None) -> list[Edge]:
    """Edges by non-increasing degree sum, ties by label."""
    es = g.sorted_edges() if edges is None else list(edges)
    return sorted(es, key=lambda e: (-(g.degree(e[0]) + g.degree(e[1])), e))


def find_coloring(
    g: Graph,
    k: int,
    *,
    skip: Edge | None = None,
    budget: int = DEFAULT_BUDGET,
    order: list[Edge] | None = None,
) -> tuple[PartialColoring | None, int]:
    """One proper ``k``-edge-coloring of ``g`` (minus ``skip``), or ``None`` if
    the search tree is exhausted. Raises :class:`Undecided` on budget."""
    es = order if order is not None else search_order(g, [e for e in g.sorted_edges() if e != skip])
    if skip is not None:
        es = [e for e in es if e != skip]
    eu = np.array([e[0] for e in es], dtype=np.int64)
    ev = np.array([e[1] for e in es], dtype=np.int64)
    status, nodes, sols = kernels.run_color_search(eu, ev, g.n, k, budget, 1)
    if status == kernels.BUDGET_EXCEEDED:
        raise Undecided(f"{k}-edge-coloring search exceeded {budget} nodes", nodes)
    if status == kernels.EXHAUSTED:
        return None, nodes
    colors = {e: int(c) for e, c in zip(es, sols[0])}
    unc = [] if skip is None else [skip]
    return PartialColoring(g, k, colors, unc), nodes


def chromatic_index(g: Graph, *, budget: int = DEFAULT_BUDGET) -> ChromaticCertificate:
    if g.n == 0:
        raise ValueError("chromatic index undefined on the empty graph")
    d = g.max_degree
    found, nodes = find_coloring(g, d, budget=budget)
    if found is not None:
        return ChromaticCertificate(d, found, "delta-bound", nodes)
    witness = vizing_color(g)
    return ChromaticCertificate(d + 1, witness, "search-exhaustion", nodes)


def classify(g: Graph, *, budget: int = DEFAULT_BUDGET) -> str:
    cert = chromatic_index(g, budget=budget)
    return "class1" if cert.chi_prime == g.max_degree else "class2"


def is_critical_edge(g: Graph, e: Edge, *, budget: int = DEFAULT_BUDGET, chi: int | None = None) -> bool:
    e = edge(*e)
    if e not in g.edges:
        raise KeyError(f"edge {e} not in graph")
    if chi is None:
        chi = chromatic_index(g, budget=budget).chi_prime
    # chi'(G-e) >= chi - 1 always, so it suffices to try chi - 1 colors
    if chi == 0:
        return False
    found, _ = find_coloring(g, chi - 1, skip=e, budget=budget)
    return found is not None


def critical_edges(g: Graph, *, budget: int = DEFAULT_BUDGET, chi: int | None = None) -> list[Edge]:
    if chi is None:
        chi = chromatic_index(g, budget=budget).chi_prime
    return [e for e in g.sorted_edges() if is_critical_edge(g, e, budget=budget, chi=chi)]


def is_critical(g: Graph, *, budget: int = DEFAULT_BUDGET) -> bool:
    """Connected, class 2, and every edge critical."""
    if not g.is_connected() or g.m == 0:
        return False
    cert = chromatic_index(g, budget=budget)
    if cert.chi_prime != g.max_degree + 1:
        return False
    return all(is_critical_edge(g, e, budget=budget, chi=cert.chi_prime) for e in g.sorted_edges())


# -- constructive (Delta+1)-coloring -------------------------------------


def vizing_color(g: Graph) -> PartialColoring:
    """Proper (Delta+1)-edge-coloring by fan rotation and Kempe path inversion
    (the Misra-Gries procedure)."""
    if g.n == 0:
        raise ValueError("cannot color the empty graph")
    k = g.max_degree + 1
    at: list[dict[int, int]] = [{} for _ in range(g.n)]
    col: dict[Edge, int] = {}

    def free(v: int) -> int:
        for c in range(1, k + 1):
            if c not in at[v]:
                return c
        raise AssertionError("no free color")  # cannot happen with Delta+1 colors

    def is_free(v: int, c: int) -> bool:
        return c not in at[v]

    def set_color(u: int, v: int, c: int) -> None:
        col[edge(u, v)] = c
        at[u][c] = v
        at[v][c] = u

    def clear(u: int, v: int) -> None:
        c = col.pop(edge(u, v))
        del at[u][c]
        del at[v][c]

    for u, v in g.sorted_edges():
        # maximal fan at u starting with v
        fan = [v]
        in_fan = {v}
        grown = True
        while grown:
            grown = False
            last = fan[-1]
            for c, w in sorted(at[u].items()):
                if w not in in_fan and is_free(last, c):
                    fan.append(w)
                    in_fan.add(w)
                    grown = True
                    break
        c = free(u)
        d = free(fan[-1])
        if not is_free(u, d):
            # invert the cd-path starting at u
            path = [u]
            cur, want = u, d
            while want in at[cur]:
                nxt = at[cur][want]
                path.append(nxt)
                cur = nxt
                want = c if want == d else d
            old = [(path[i], path[i + 1], col[edge(path[i], path[i + 1])]) for i in range(len(path) - 1)]
            for a, b, _ in old:
                clear(a, b)
            for a, b, cc in old:
                set_color(a, b, d if cc == c else c)
        # first fan vertex w with d free such that fan[:w+1] is still a fan
        idx = -1
        for i, w in enumerate(fan):
            if i > 0 and not is_free(fan[i - 1], col[edge(u, w)]):
                break
            if is_free(w, d):
                idx = i
                break
        if idx < 0:  # pragma: no cover - excluded by the fan argument
            raise AssertionError(f"no rotatable fan prefix at edge {(u, v)}")
        # rotate the prefix
        for i in range(idx):
            w, nxtw = fan[i], fan[i + 1]
            cc = col[edge(u, nxtw)]
            clear(u, nxtw)
            set_color(u, w, cc)
        set_color(u, fan[idx], d)

    out = PartialColoring(g, k, col)
    v = validate(out)
    if v is not None:  # pragma: no cover - guarded by tests
        raise AssertionError(f"vizing_color produced an improper coloring: {v}")
    return out


# -- orbit enumeration ---------------------------------------------------


@dataclass
class ColoringOrbits:
    """Proper ``k``-colorings of ``G - e``, one per color-permutation orbit."""

    graph: Graph
    uncolored_edge: Edge | None
    palette_size: int
    colorings: list[PartialColoring] = field(default_factory=list)
    complete: bool = True
    nodes: int = 0

    def __iter__(self) -> Iterator[PartialColoring]:
        return iter(self.colorings)

    def __len__(self) -> int:
        return len(self.colorings)


def enumerate_colorings(
    g: Graph,
    e: Edge | None,
    k: int,
    *,
    budget: int = DEFAULT_BUDGET,
    limit: int = DEFAULT_ORBIT_LIMIT,
) -> ColoringOrbits:
    """Every proper ``k``-edge-coloring of ``g - e`` up to renaming colors.

    Each orbit is returned as its canonical representative (see
    :meth:`PartialColoring.canonical`). ``complete`` is false when the node
    budget or the orbit limit cut the enumeration short.
    """
    if e is not None:
        e = edge(*e)
        if e not in g.edges:
            raise KeyError(f"edge {e} not in graph")
    es = search_order(g, [f for f in g.sorted_edges() if f != e])
    eu = np.array([f[0] for f in es], dtype=np.int64)
    ev = np.array([f[1] for f in es], dtype=np.int64)
    status, nodes, sols = kernels.run_color_search(eu, ev, g.n, k, budget, limit)
    unc = [] if e is None else [e]
    out = []
    for row in sols:
        c = PartialColoring(g, k, {f: int(x) for f, x in zip(es, row)}, unc, check=False)
        out.append(c.canonical())
    out.sort(key=lambda c: c.canonical_key())
    return ColoringOrbits(g, e, k, out, status == kernels.EXHAUSTED, nodes)
