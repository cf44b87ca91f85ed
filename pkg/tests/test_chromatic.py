from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from multifan import kernels
from multifan.chromatic import (
    Undecided,
    chromatic_index,
    classify,
    critical_edges,
    enumerate_colorings,
    find_coloring,
    is_critical,
    is_critical_edge,
    vizing_color,
)
from multifan.coloring import PartialColoring, validate
from multifan.enumeration import enumerate_connected
from multifan.graph import Graph, make_family

from .strategies import graphs


def brute_colorings(g: Graph, k: int, skip=None):
    """Every proper k-coloring of g - skip, as dicts."""
    es = [e for e in g.sorted_edges() if e != skip]
    for cols in itertools.product(range(1, k + 1), repeat=len(es)):
        ok = True
        seen = set()
        for (u, v), c in zip(es, cols):
            if (u, c) in seen or (v, c) in seen:
                ok = False
                break
            seen.add((u, c))
            seen.add((v, c))
        if ok:
            yield dict(zip(es, cols))


def brute_chi(g: Graph, skip=None) -> int:
    if all(e == skip for e in g.edges):
        return 0
    k = 1
    while next(brute_colorings(g, k, skip), None) is None:
        k += 1
    return k


@pytest.mark.parametrize(
    "spec, chi, proof",
    [
        ("cycle:5", 3, "search-exhaustion"),
        ("cycle:6", 2, "delta-bound"),
        ("complete:4", 3, "delta-bound"),
        ("complete:5", 5, "search-exhaustion"),
        ("petersen", 4, "search-exhaustion"),
        ("petersen-v", 4, "search-exhaustion"),
        ("bipartite:3,3", 3, "delta-bound"),
        ("star:4", 4, "delta-bound"),
    ],
)
def test_known_chromatic_indices(spec, chi, proof):
    cert = chromatic_index(make_family(spec))
    assert cert.chi_prime == chi
    assert cert.lower_bound_proof == proof
    assert validate(cert.witness) is None
    assert len(cert.witness.colors_used()) <= chi


def test_criticality_of_small_families():
    assert is_critical(make_family("cycle:5"))
    assert is_critical(make_family("petersen-v"))
    assert not is_critical(make_family("petersen"))
    assert not is_critical(make_family("complete:4"))
    assert not is_critical(Graph(3, [(0, 1)]))
    g = make_family("petersen-v")
    assert len(critical_edges(g)) == 12
    assert classify(make_family("cycle:7")) == "class2"
    assert classify(make_family("cycle:8")) == "class1"


def test_critical_edge_errors():
    with pytest.raises(KeyError):
        is_critical_edge(make_family("cycle:5"), (0, 2))
    with pytest.raises(ValueError):
        chromatic_index(Graph(0))


def test_budget_exhaustion_is_reported():
    with pytest.raises(Undecided) as info:
        chromatic_index(make_family("complete:9"), budget=1000)
    assert info.value.nodes > 1000


@settings(max_examples=60)
@given(graphs(max_n=6))
def test_chromatic_index_matches_brute_force(g):
    if g.m == 0 or g.m > 8:
        return
    cert = chromatic_index(g)
    assert cert.chi_prime == brute_chi(g)


def test_critical_edges_match_brute_force():
    checked = 0
    for n in range(3, 6):
        for g in enumerate_connected(n):
            if g.m > 8:
                continue
            chi = brute_chi(g)
            expected = [e for e in g.sorted_edges() if brute_chi(g, skip=e) < chi]
            assert critical_edges(g) == expected
            checked += 1
    assert checked > 20


@pytest.mark.parametrize("spec", ["cycle:5", "complete:4", "path:4", "star:3", "bipartite:2,3"])
def test_orbit_enumeration_matches_brute_force(spec):
    g = make_family(spec)
    for e in g.sorted_edges():
        k = g.max_degree
        keys = {
            PartialColoring(g, k, col, [e]).canonical_key() for col in brute_colorings(g, k, skip=e)
        }
        orbits = enumerate_colorings(g, e, k)
        assert orbits.complete
        assert [c.canonical_key() for c in orbits] == sorted(keys)


def test_orbit_counts():
    assert len(enumerate_colorings(make_family("cycle:5"), (0, 1), 2)) == 1
    assert len(enumerate_colorings(make_family("complete:3"), (0, 1), 3)) == 1
    assert len(enumerate_colorings(make_family("petersen-v"), (0, 1), 3)) == 7


def test_orbit_limit_marks_incomplete():
    orbits = enumerate_colorings(make_family("petersen-v"), (0, 1), 3, limit=2)
    assert not orbits.complete and len(orbits) == 2
    with pytest.raises(KeyError):
        enumerate_colorings(make_family("complete:5"), (0, 9), 4)


def test_find_coloring_skip_and_exhaustion():
    g = make_family("cycle:5")
    c, _ = find_coloring(g, 2, skip=(0, 1))
    assert c is not None and c.uncolored_edge == (0, 1)
    none, nodes = find_coloring(g, 2)
    assert none is None and nodes > 0


def test_search_kernel_status_codes():
    eu = np.array([0, 1, 2], dtype=np.int64)
    ev = np.array([1, 2, 0], dtype=np.int64)
    status, _, sols = kernels.run_color_search(eu, ev, 3, 2, 10**6, 10)
    assert status == kernels.EXHAUSTED and len(sols) == 0
    status, _, sols = kernels.run_color_search(eu, ev, 3, 3, 10**6, 10)
    assert status == kernels.EXHAUSTED and len(sols) == 1
    status, _, _ = kernels.run_color_search(eu, ev, 3, 3, 10**6, 1)
    assert status == kernels.LIMIT_REACHED
    status, _, _ = kernels.run_color_search(eu, ev, 3, 3, 1, 10)
    assert status == kernels.BUDGET_EXCEEDED


@given(graphs(min_n=1, max_n=20))
def test_vizing_color_is_proper(g):
    if g.m == 0:
        return
    c = vizing_color(g)
    assert validate(c) is None
    assert c.palette_size == g.max_degree + 1
    assert not c.uncolored


@settings(max_examples=40)
@given(graphs(min_n=2, max_n=9))
def test_vizing_bounds(g):
    if g.m == 0:
        return
    cert = chromatic_index(g)
    assert g.max_degree <= cert.chi_prime <= g.max_degree + 1
    assert validate(cert.witness) is None


def test_overfull_graphs_are_class_two_up_to_six_vertices():
    from multifan.graph import is_overfull

    for n in range(1, 7):
        for g in enumerate_connected(n):
            if g.m and is_overfull(g):
                assert chromatic_index(g).chi_prime == g.max_degree + 1
