from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from multifan.coloring import PartialColoring
from multifan.graph import Graph, edge

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# C5 labelled r=0, s=1, a=2, b=3, c=4 around the cycle r-s-a-b-c-r
R, S, A, B, C = range(5)


@pytest.fixture
def c5_coloring() -> PartialColoring:
    g = Graph(5, [(R, S), (S, A), (A, B), (B, C), (C, R)])
    colors = {edge(S, A): 1, edge(A, B): 2, edge(B, C): 1, edge(C, R): 2}
    return PartialColoring(g, 2, colors, [edge(R, S)])


# criterion number -> (passed, detail), filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
ACCEPTANCE_COUNT = 9


def pytest_terminal_summary(terminalreporter):
    ran = any(
        "test_acceptance" in rep.nodeid
        for reports in terminalreporter.stats.values()
        for rep in reports
        if hasattr(rep, "nodeid")
    )
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for k in range(1, ACCEPTANCE_COUNT + 1):
        ok, detail = ACCEPTANCE.get(k, (False, "not run or did not complete"))
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
