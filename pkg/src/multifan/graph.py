"""Simple undirected graphs, degree/core bookkeeping and named families.

Vertices are the integers ``0..n-1``. Edges are stored as sorted pairs
``(u, v)`` with ``u < v``. A :class:`Graph` never changes after construction,
so it can be shared freely between workers.

Family labelings (used by :func:`make_family`):

* ``cycle:n``       vertices in cyclic order, edges ``i ~ i+1 (mod n)``
* ``path:n``        edges ``i ~ i+1``
* ``complete:n``    all pairs
* ``bipartite:a,b`` parts ``0..a-1`` and ``a..a+b-1``
* ``star:k``        center ``0`` and leaves ``1..k``
* ``wheel:k``       hub ``0`` and rim cycle ``1..k``
* ``petersen``      outer 5-cycle ``0..4``, spokes ``i ~ i+5``, inner
                    pentagram ``5+i ~ 5+(i+2)%5``
* ``petersen-v``    Petersen with vertex 9 deleted (labels 0..8 kept)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalize an edge to the sorted-pair form."""
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_edges", "_adj", "_deg")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        es: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = edge(u, v)
            if e in es:
                raise ValueError(f"parallel edge {e}")
            es.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._edges = frozenset(es)
        self._adj = tuple(frozenset(a) for a in adj)
        self._deg = tuple(len(a) for a in adj)

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return self._deg[v]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._deg

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and v in self._adj[u]

    def vertices(self) -> range:
        return range(self._n)

    @property
    def max_degree(self) -> int:
        self._require_nonempty()
        return max(self._deg)

    @property
    def min_degree(self) -> int:
        self._require_nonempty()
        return min(self._deg)

    def delta_neighbors(self, v: int) -> frozenset[int]:
        """N_Delta(v): neighbors of maximum degree."""
        d = self.max_degree
        return frozenset(w for w in self._adj[v] if self._deg[w] == d)

    def small_neighbors(self, v: int) -> frozenset[int]:
        """N_<Delta(v): neighbors of degree below the maximum."""
        d = self.max_degree
        return frozenset(w for w in self._adj[v] if self._deg[w] < d)

    # -- derived graphs --------------------------------------------------

    def remove_edge(self, u: int, v: int) -> Graph:
        e = edge(u, v)
        if e not in self._edges:
            raise KeyError(f"edge {e} not in graph")
        return Graph(self._n, self._edges - {e})

    def remove_vertex(self, v: int) -> Graph:
        """Delete ``v`` and relabel the vertices above it down by one."""
        if not 0 <= v < self._n:
            raise KeyError(f"vertex {v} not in graph")

        def rl(x: int) -> int:
            return x - 1 if x > v else x

        return Graph(self._n - 1, [(rl(a), rl(b)) for a, b in self._edges if v not in (a, b)])

    def induced(self, vs: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``vs``; also returns new-label -> old-label."""
        order = sorted(set(vs))
        pos = {x: i for i, x in enumerate(order)}
        es = [(pos[a], pos[b]) for a, b in self._edges if a in pos and b in pos]
        return Graph(len(order), es), order

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self._n, [(perm[a], perm[b]) for a, b in self._edges])

    def is_connected(self) -> bool:
        if self._n == 0:
            return False
        seen = {0}
        todo = deque([0])
        while todo:
            x = todo.popleft()
            for y in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == self._n

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.sorted_edges()})"

    def _require_nonempty(self) -> None:
        if self._n == 0:
            raise ValueError("operation undefined on the empty graph")


@dataclass(frozen=True)
class CoreInfo:
    """The core G_Delta: vertices of maximum degree and their induced degrees."""

    core_vertices: frozenset[int]
    core_min_degree: int
    core_max_degree: int
    core_degree: dict[int, int]


def core_info(g: Graph) -> CoreInfo:
    if g.n == 0:
        raise ValueError("core undefined on the empty graph")
    d = g.max_degree
    core = frozenset(v for v in g.vertices() if g.degree(v) == d)
    cdeg = {v: len(g.neighbors(v) & core) for v in core}
    return CoreInfo(core, min(cdeg.values()), max(cdeg.values()), cdeg)


def is_overfull(g: Graph) -> bool:
    """|E| > Delta * floor(n/2), in integer arithmetic."""
    if g.n == 0:
        raise ValueError("overfullness undefined on the empty graph")
    return g.m > g.max_degree * (g.n // 2)


def light_vertices(g: Graph) -> frozenset[int]:
    """Maximum-degree vertices whose core degree is the minimum core degree."""
    info = core_info(g)
    return frozenset(v for v, k in info.core_degree.items() if k == info.core_min_degree)


# -- families ------------------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError(f"bipartite parts must be positive, got {a},{b}")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(k: int) -> Graph:
    if k < 1:
        raise ValueError(f"star needs k >= 1 leaves, got {k}")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def wheel(k: int) -> Graph:
    if k < 3:
        raise ValueError(f"wheel needs a rim of >= 3 vertices, got {k}")
    rim = [(1 + i, 1 + (i + 1) % k) for i in range(k)]
    return Graph(k + 1, rim + [(0, i) for i in range(1, k + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def petersen_minus_vertex() -> Graph:
    return petersen().remove_vertex(9)


_FAMILIES = {
    "cycle": (cycle, 1),
    "path": (path, 1),
    "complete": (complete, 1),
    "bipartite": (complete_bipartite, 2),
    "star": (star, 1),
    "wheel": (wheel, 1),
    "petersen": (petersen, 0),
    "petersen-v": (petersen_minus_vertex, 0),
}


def family_names() -> list[str]:
    return sorted(_FAMILIES)


def make_family(spec: str) -> Graph:
    """Build a named graph from a spec like ``cycle:5`` or ``bipartite:3,3``."""
    name, _, args = spec.strip().partition(":")
    name = name.lower()
    if name not in _FAMILIES:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(family_names())}")
    fn, arity = _FAMILIES[name]
    try:
        params = [int(a) for a in args.split(",")] if args else []
    except ValueError:
        raise ValueError(f"bad parameters in family spec {spec!r}") from None
    if len(params) != arity:
        raise ValueError(f"family {name!r} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


def is_family_spec(text: str) -> bool:
    return text.strip().partition(":")[0].lower() in _FAMILIES

