"""Exhaustive generation of small graphs up to isomorphism.

Isomorphism classes are identified by a canonical code: the minimum
upper-triangle adjacency bit string over the labelings that respect the
color-refinement partition (see :func:`multifan.kernels.canonical_code`).
Because refinement is itself label-independent, two graphs get the same code
exactly when they are isomorphic.

Generation adds one edge at a time, level by level, deduplicating each level
by canonical code.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from . import kernels
from .graph import Graph

MAX_ENUM_N = 8


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1
    return a


def canonical_form(g: Graph) -> tuple[int, list[int]]:
    """Return ``(code, order)``; ``order[p]`` is the vertex placed at ``p``."""
    if g.n > MAX_ENUM_N:
        raise ValueError(f"canonical form supported for n <= {MAX_ENUM_N}, got {g.n}")
    code, order = kernels.canonical_code(adjacency_matrix(g))
    return int(code), [int(x) for x in order]


def canonical_graph(g: Graph) -> Graph:
    _, order = canonical_form(g)
    perm = [0] * g.n
    for p, v in enumerate(order):
        perm[v] = p
    return g.relabel(perm)


def graph_from_code(code: int, n: int) -> Graph:
    edges = []
    b = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> b) & 1:
                edges.append((i, j))
            b -= 1
    return Graph(n, edges)


def all_graph_codes(n: int) -> list[list[int]]:
    """Canonical codes of all graphs on ``n`` vertices, grouped by edge count."""
    if not 1 <= n <= MAX_ENUM_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")
    levels = [[0]]
    for _ in range(n * (n - 1) // 2):
        nxt: set[int] = set()
        for code in levels[-1]:
            nxt.update(kernels.child_codes(np.int64(code), np.int64(n)).tolist())
        levels.append(sorted(nxt))
    return levels


def enumerate_graphs(n: int, connected: bool = False) -> Iterator[Graph]:
    """All graphs on ``n`` vertices up to isomorphism, in canonical labeling,
    ordered by edge count then code."""
    for level in all_graph_codes(n):
        for code in level:
            g = graph_from_code(code, n)
            if not connected or g.is_connected():
                yield g


def enumerate_connected(n: int) -> Iterator[Graph]:
    return enumerate_graphs(n, connected=True)
