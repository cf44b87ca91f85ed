from __future__ import annotations

from hypothesis import strategies as st

from multifan.graph import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8, min_edges: int = 0) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    es = [p for p, keep in zip(pairs, mask) if keep]
    if len(es) < min_edges:
        es = pairs[: max(min_edges, len(es))]
    return Graph(n, es)


@st.composite
def permutations_of(draw, n: int) -> list[int]:
    return draw(st.permutations(list(range(n))))
