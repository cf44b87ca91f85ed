"""Machine checks of the multi-fan lemmas on concrete instances.

Each ``check_*`` function returns a :class:`CheckOutcome` with verdict
``pass``, ``fail``, ``vacuous`` (hypotheses not met) or ``skipped`` (could not
be decided soundly, e.g. the maximum fan is not certified). A ``fail`` always
carries a witness that :func:`replay` can re-run.

Colorings are quantified over color-permutation orbits. That loses nothing:
every notion involved (missing sets, elementary sets, chains, fans, stopping
colors, linkage) is carried along by a renaming of colors, so each claim holds
for a coloring iff it holds for every renaming of it.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import IO, Any, Callable, Iterable, Iterator

from .chromatic import (
    DEFAULT_BUDGET,
    DEFAULT_ORBIT_LIMIT,
    ColoringOrbits,
    Undecided,
    chromatic_index,
    critical_edges,
    enumerate_colorings,
)
from .coloring import PartialColoring, are_linked, dump_coloring, elementary_witness, kempe_chain, parse_coloring
from .fans import (
    ExtendedMultiFan,
    MaximumFan,
    MultiFan,
    NonElementaryError,
    extend_multifan,
    fan_order,
    grow_multifan,
    maximum_multifan,
    pivot_pairs,
    stopping_colors,
)
from .graph import Edge, Graph, core_info, edge, is_overfull, light_vertices
from .graph6 import Graph6Error, parse_graph6, to_graph6_str

CHECKS = ("vf1", "vf2", "val", "extend", "tautypes", "lemma1", "theorem", "edgecount")
VERDICTS = ("pass", "fail", "vacuous", "skipped")


@dataclass
class CheckOutcome:
    check_id: str
    graph6: str
    params: dict[str, Any]
    verdict: str
    reason: str = ""
    witness: dict[str, Any] | None = None

    def to_record(self) -> dict[str, Any]:
        rec = {"type": "outcome", **asdict(self)}
        if rec["witness"] is None:
            del rec["witness"]
        return rec


# -- hypothesis arithmetic ----------------------------------------------


def degree_condition(n: int, delta: int, k: int) -> bool:
    """Delta >= 2n/3 + 3k/2, i.e. 6 Delta >= 4n + 9k."""
    return 6 * delta >= 4 * n + 9 * k


def theorem_hypothesis_k(n: int, delta: int, core_min_degree: int) -> int | None:
    """Smallest ``k >= 2`` with ``core_min_degree <= k`` meeting the degree
    condition, or ``None``. The condition only gets harder as ``k`` grows."""
    k = max(2, core_min_degree)
    return k if degree_condition(n, delta, k) else None


def smallest_satisfiable_order(k: int) -> int:
    """Least ``n`` admitting some ``Delta <= n - 1`` with the degree condition."""
    n = 1
    while not degree_condition(n, n - 1, k):
        n += 1
    return n


# -- per-graph facts -----------------------------------------------------


@dataclass
class GraphFacts:
    """Quantities every check needs, computed once per graph."""

    graph: Graph
    graph6: str
    delta: int
    chi: int
    nodes: int
    critical_edges: tuple[Edge, ...]
    is_critical: bool
    overfull: bool
    core_min_degree: int
    light: frozenset[int]
    budget: int = DEFAULT_BUDGET
    limit: int = DEFAULT_ORBIT_LIMIT
    _orbits: dict[Edge, ColoringOrbits] = field(default_factory=dict, repr=False)
    _maxfans: dict[tuple[Edge, int], MaximumFan] = field(default_factory=dict, repr=False)

    @property
    def class2(self) -> bool:
        return self.chi == self.delta + 1

    def orbits(self, e: Edge) -> ColoringOrbits:
        if e not in self._orbits:
            self._orbits[e] = enumerate_colorings(self.graph, e, self.delta, budget=self.budget, limit=self.limit)
        return self._orbits[e]

    def max_fan(self, e: Edge, r: int, *, restarts: int = 512, seed: int = 0) -> MaximumFan:
        key = (e, r)
        if key not in self._maxfans:
            orbits = self.orbits(e)
            self._maxfans[key] = _max_fan_from_orbits(
                self.graph, e, r, orbits, restarts=restarts, seed=seed, budget=self.budget, limit=self.limit
            )
        return self._maxfans[key]


def _max_fan_from_orbits(
    g: Graph, e: Edge, r: int, orbits: ColoringOrbits, *, restarts: int, seed: int, budget: int, limit: int
) -> MaximumFan:
    if orbits.complete:
        fans = [grow_multifan(c, r) for c in orbits]
        size = max(len(f) for f in fans)
        best = [f for f in fans if len(f) == size]
        return MaximumFan(best[0].coloring, best[0], True, size, best, len(fans))
    return maximum_multifan(g, e, r, budget=budget, limit=limit, restarts=restarts, seed=seed, check_critical=False)


def graph_facts(g: Graph, *, budget: int = DEFAULT_BUDGET, limit: int = DEFAULT_ORBIT_LIMIT) -> GraphFacts:
    """Raises :class:`Undecided` when the chromatic index cannot be settled."""
    cert = chromatic_index(g, budget=budget)
    d = g.max_degree
    crit: tuple[Edge, ...] = ()
    if cert.chi_prime == d + 1:
        crit = tuple(critical_edges(g, budget=budget, chi=cert.chi_prime))
    is_crit = cert.chi_prime == d + 1 and g.is_connected() and len(crit) == g.m and g.m > 0
    info = core_info(g)
    return GraphFacts(
        graph=g,
        graph6=to_graph6_str(g),
        delta=d,
        chi=cert.chi_prime,
        nodes=cert.nodes,
        critical_edges=crit,
        is_critical=is_crit,
        overfull=is_overfull(g),
        core_min_degree=info.core_min_degree,
        light=light_vertices(g),
        budget=budget,
        limit=limit,
    )


def _facts(g: Graph, facts: GraphFacts | None) -> GraphFacts:
    return facts if facts is not None else graph_facts(g)


def _witness(g: Graph, c: PartialColoring | None, trace: list[str], **extra: Any) -> dict[str, Any]:
    w: dict[str, Any] = {"graph6": to_graph6_str(g), "trace": trace}
    if c is not None:
        w["coloring"] = dump_coloring(c)
    w.update(extra)
    return w


def _instance(check: str, g: Graph, **params: Any) -> Callable[..., CheckOutcome]:
    g6 = to_graph6_str(g)

    def make(verdict: str, reason: str = "", witness: dict | None = None) -> CheckOutcome:
        return CheckOutcome(check, g6, params, verdict, reason, witness)

    return make


def _edge_param(e: Edge) -> list[int]:
    return [e[0], e[1]]


def _coloring_hypotheses(g: Graph, e: Edge, c: PartialColoring, facts: GraphFacts) -> str | None:
    """Why (g, e, c) is outside the lemma hypotheses, or ``None``."""
    if not facts.class2:
        return "graph is class 1"
    if e not in facts.critical_edges:
        return f"edge {e} is not critical"
    if c.uncolored_edge != e or c.palette_size != facts.delta:
        return "coloring is not a Delta-coloring of G - e"
    return None


# -- individual checks ---------------------------------------------------


def check_vf1(
    g: Graph, e: Edge, c: PartialColoring, *, facts: GraphFacts | None = None, require_hypotheses: bool = True
) -> CheckOutcome:
    """Every maximal multi-fan at either end of a critical edge is elementary."""
    e = edge(*e)
    out = _instance("vf1", g, edge=_edge_param(e), coloring=list(c.canonical_key()))
    if require_hypotheses:
        why = _coloring_hypotheses(g, e, c, _facts(g, facts))
        if why:
            return out("vacuous", why)
    for r in e:
        fan = grow_multifan(c, r)
        w = elementary_witness(c, fan.vertex_set)
        if w is not None:
            return out(
                "fail",
                f"fan at {r} is not elementary",
                _witness(g, c, [f"grow_multifan center={r}", f"fan={list(fan.vertices)}"],
                         edge=_edge_param(e), center=r, shared=[w.u, w.v, w.color]),
            )
    return out("pass")


def _vf2_fan(g: Graph, c: PartialColoring, fan: MultiFan) -> tuple[str, dict] | None:
    """First violated part of the vf2 claims for ``fan``, or ``None``."""
    r = fan.center
    order = fan_order(fan)
    miss = sorted(order.locator)
    loc = order.locator
    for a in miss:
        for b in miss:
            if a == b:
                continue
            va, vb = loc[a], loc[b]
            linked = are_linked(c, va, vb, a, b)
            if va == r and not linked:
                return "a", {"alpha": a, "beta": b, "v_alpha": va, "v_beta": vb}
            if not order.comparable(a, b) and not linked:
                return "b", {"alpha": a, "beta": b, "v_alpha": va, "v_beta": vb}
            if order.precedes(a, b) and not linked and r not in kempe_chain(c, vb, a, b):
                return "c", {"alpha": a, "beta": b, "v_alpha": va, "v_beta": vb}
    d = g.max_degree
    heavy = sum(1 for s in fan.vertices if g.degree(s) == d)
    for v in fan.vertices:
        if heavy < len(c.missing_colors(v)):
            return "d", {"vertex": v, "missing": len(c.missing_colors(v)), "delta_vertices": heavy}
    return None


def check_vf2(
    g: Graph,
    e: Edge,
    c: PartialColoring,
    fan: MultiFan | None = None,
    *,
    facts: GraphFacts | None = None,
    require_hypotheses: bool = True,
) -> CheckOutcome:
    """Linkage claims (a)-(c) over all color pairs and the Delta-neighbor count (d)."""
    e = edge(*e)
    out = _instance("vf2", g, edge=_edge_param(e), coloring=list(c.canonical_key()))
    if require_hypotheses:
        why = _coloring_hypotheses(g, e, c, _facts(g, facts))
        if why:
            return out("vacuous", why)
    fans = [fan] if fan is not None else [grow_multifan(c, r) for r in e]
    for f in fans:
        try:
            bad = _vf2_fan(g, c, f)
        except NonElementaryError as exc:
            return out("skipped", f"fan at {f.center} is not elementary: {exc}")
        if bad is not None:
            part, detail = bad
            return out(
                "fail",
                f"part ({part}) fails at center {f.center}",
                _witness(g, c, [f"grow_multifan center={f.center}", f"fan={list(f.vertices)}"],
                         edge=_edge_param(e), center=f.center, part=part, **detail),
            )
    return out("pass")


def check_val(g: Graph, *, facts: GraphFacts | None = None) -> CheckOutcome:
    """For each critical edge xy: x has >= Delta - d(y) + 1 Delta-neighbors besides y."""
    facts = _facts(g, facts)
    out = _instance("val", g)
    if not facts.class2:
        return out("vacuous", "graph is class 1")
    if not facts.critical_edges:
        return out("vacuous", "no critical edge")
    d = facts.delta
    for a, b in facts.critical_edges:
        for x, y in ((a, b), (b, a)):
            have = sum(1 for z in g.neighbors(x) if z != y and g.degree(z) == d)
            need = d - g.degree(y) + 1
            if have < need:
                return out("fail", f"vertex {x} has {have} Delta-neighbors besides {y}, needs {need}",
                           _witness(g, None, [], edge=[x, y], have=have, need=need))
    res = out("pass")
    res.params["critical_edges"] = len(facts.critical_edges)
    return res


def check_extend(
    g: Graph, e: Edge, r: int, *, facts: GraphFacts | None = None, restarts: int = 512, seed: int = 0
) -> CheckOutcome:
    """Claims (a)-(d) on every extended multi-fan built from a certified
    maximum fan at ``r``, over every maximizing coloring and every pivot."""
    e = edge(*e)
    facts = _facts(g, facts)
    out = _instance("extend", g, edge=_edge_param(e), center=r)
    if not facts.class2 or e not in facts.critical_edges:
        return out("vacuous", "edge is not a critical edge of a class 2 graph")
    mf = facts.max_fan(e, r, restarts=restarts, seed=seed)
    if not mf.certified:
        return out("skipped", "best-found fan: maximum not certified")
    pivots_seen = nonempty = 0
    for fan in mf.maximizers:
        c = fan.coloring
        for s_h, beta in pivot_pairs(c, fan):
            pivots_seen += 1
            x = extend_multifan(c, fan, s_h, beta)
            if x.extension:
                nonempty += 1
            bad = extension_violation(g, c, fan, x)
            if bad is not None:
                part, detail = bad
                out_ = out(
                    "fail",
                    f"part ({part}) fails for pivot {s_h}, beta {beta}",
                    _witness(g, c, [f"grow_multifan center={r}", f"extend pivot={s_h} beta={beta}"],
                             edge=_edge_param(e), center=r, pivot=s_h, beta=beta, part=part, **detail),
                )
                out_.params.update(pivots=pivots_seen, nonempty_extensions=nonempty)
                return out_
    res = out("pass" if pivots_seen else "vacuous", "" if pivots_seen else "no (pivot, stopping color) pair")
    res.params.update(maximizers=len(mf.maximizers), fan_size=mf.size, pivots=pivots_seen, nonempty_extensions=nonempty)
    return res


def extension_violation(g: Graph, c: PartialColoring, fan: MultiFan, x: ExtendedMultiFan) -> tuple[str, dict] | None:
    """First failing part of the extension claims, as ``(part, detail)``, or ``None``."""
    r = fan.center
    w = elementary_witness(c, x.vertex_set)
    if w is not None:
        return "a", {"shared": [w.u, w.v, w.color]}
    k_f = x.stopping.K_F
    K = x.stopping.K
    ext = x.extension_vertices
    all_miss = c.missing_union(x.vertex_set)
    ext_miss = c.missing_union(ext)
    fan_miss = fan.missing()
    for one in c.missing_colors(r):
        for gamma in all_miss - k_f:
            if gamma == one:
                continue
            v = x.locate(gamma)
            if not are_linked(c, r, v, one, gamma):
                return "b", {"one": one, "gamma": gamma, "vertex": v}
    for gamma in ext_miss:
        v = x.locate(gamma, ext)
        if not are_linked(c, x.pivot, v, x.pivot_color, gamma):
            return "c", {"gamma": gamma, "vertex": v}
    for gamma in ext_miss & k_f:
        v = x.locate(gamma, ext)
        for v0, _seq in x.sequences_containing(v):
            first_color = c.color(x.pivot, v0)
            for one in c.missing_colors(r):
                if first_color != one:
                    if not are_linked(c, r, v, one, gamma):
                        return "d", {"gamma": gamma, "vertex": v, "first": v0, "one": one}
                else:
                    for zeta in fan_miss & K:
                        vz = x.locate(zeta, fan.vertex_set)
                        if not are_linked(c, v, vz, zeta, gamma):
                            return "d", {"gamma": gamma, "vertex": v, "first": v0, "one": one, "zeta": zeta}
    return None


def check_tau_types(g: Graph, e: Edge, r: int, *, facts: GraphFacts | None = None) -> CheckOutcome:
    """Each extremal tau-sequence outside a certified maximum fan meets exactly
    one of the four terminal conditions."""
    e = edge(*e)
    facts = _facts(g, facts)
    out = _instance("tautypes", g, edge=_edge_param(e), center=r)
    if not facts.class2 or e not in facts.critical_edges:
        return out("vacuous", "edge is not a critical edge of a class 2 graph")
    mf = facts.max_fan(e, r)
    if not mf.certified:
        return out("skipped", "best-found fan: maximum not certified")
    from .fans import tau_sequences_outside

    counts: Counter[str] = Counter()
    for fan in mf.maximizers:
        c = fan.coloring
        for tau, v in sorted(c.colors_at(r).items()):
            if v in fan.vertex_set:
                continue
            for seq, typ in tau_sequences_outside(c, fan, tau):
                if len(typ.hits) != 1:
                    return out(
                        "fail",
                        f"tau-sequence from {seq.vertices[0]} meets conditions {list(typ.hits) or 'none'}",
                        _witness(g, c, [f"grow_multifan center={r}", f"tau={tau}"], edge=_edge_param(e),
                                 center=r, tau=tau, sequence=list(seq.vertices), hits=list(typ.hits)),
                    )
                counts[typ.tag] += 1
    res = out("pass" if counts else "vacuous", "" if counts else "no edge from the center leaves the fan")
    res.params.update(types=dict(sorted(counts.items())))
    return res


def check_lemma1(g: Graph, *, facts: GraphFacts | None = None, restarts: int = 512, seed: int = 0) -> CheckOutcome:
    """High-degree vertices are elementary under a maximum-fan coloring."""
    facts = _facts(g, facts)
    n, d, k = g.n, facts.delta, facts.core_min_degree
    out = _instance("lemma1", g, n=n, delta=d, k=k)
    if not facts.is_critical:
        return out("vacuous", "graph is not critical class 2")
    if not degree_condition(n, d, k):
        return out("vacuous", f"degree condition fails: 6*{d} < 4*{n} + 9*{k}")
    high = [v for v in g.vertices() if g.degree(v) >= d - k + 1]
    evaluated = 0
    every = some = True
    for r in sorted(facts.light):
        for s in sorted(g.neighbors(r)):
            if g.degree(s) > d - 1:
                continue
            e = edge(r, s)
            mf = facts.max_fan(e, r, restarts=restarts, seed=seed)
            if not mf.certified:
                return out("skipped", f"maximum fan at {r} for {e} not certified")
            results = [elementary_witness(f.coloring, high) for f in mf.maximizers]
            evaluated += 1
            all_ok = all(w is None for w in results)
            any_ok = any(w is None for w in results)
            every &= all_ok
            some &= any_ok
            if not all_ok:
                bad = next(i for i, w in enumerate(results) if w is not None)
                w = results[bad]
                res = out("fail", f"high-degree vertices {w.u}, {w.v} share color {w.color}",
                          _witness(g, mf.maximizers[bad].coloring, [f"maximum fan center={r} edge={e}"],
                                   edge=_edge_param(e), center=r, shared=[w.u, w.v, w.color]))
                res.params.update(reading_every_maximizer=False, reading_some_maximizer=any_ok)
                return res
    if not evaluated:
        return out("vacuous", "no light vertex with a neighbor of degree below Delta")
    res = out("pass")
    res.params.update(instances=evaluated, reading_every_maximizer=every, reading_some_maximizer=some)
    return res


def check_theorem_main(g: Graph, *, facts: GraphFacts | None = None) -> CheckOutcome:
    """Critical class 2 + degree condition for some k >= 2 with core min degree <= k  =>  overfull."""
    facts = _facts(g, facts)
    n, d = g.n, facts.delta
    k = theorem_hypothesis_k(n, d, facts.core_min_degree)
    out = _instance("theorem", g, n=n, delta=d, core_min_degree=facts.core_min_degree, k=k)
    if not facts.is_critical:
        return out("vacuous", "graph is not critical class 2")
    if k is None:
        return out("vacuous", f"degree condition fails for every admissible k (needs n >= {smallest_satisfiable_order(2)})")
    if facts.overfull:
        return out("pass")
    return out("fail", "hypotheses hold but graph is not overfull", _witness(g, None, [], k=k))


def check_elementary_edge_count(g: Graph, c: PartialColoring) -> CheckOutcome:
    """If V(G) is elementary, n is odd and |E| = (n-1)/2 * Delta + 1."""
    out = _instance("edgecount", g, coloring=list(c.canonical_key()),
                    uncolored=[list(e) for e in sorted(c.uncolored)])
    w = elementary_witness(c, g.vertices())
    if w is not None:
        return out("vacuous", f"V(G) not elementary: {w.u}, {w.v} share color {w.color}")
    n, m, d = g.n, g.m, g.max_degree
    if n % 2 == 0:
        return out("fail", "elementary vertex set of even order is impossible", _witness(g, c, [], n=n, m=m, delta=d))
    if 2 * m != (n - 1) * d + 2:
        return out("fail", f"|E|={m} differs from (n-1)/2*Delta+1={(n - 1) * d // 2 + 1}",
                   _witness(g, c, [], n=n, m=m, delta=d))
    return out("pass")


# -- replay --------------------------------------------------------------


def replay(record: dict[str, Any]) -> CheckOutcome:
    """Re-run the check that produced ``record`` from its witness alone."""
    w = record["witness"]
    g = parse_graph6(w["graph6"])
    c = parse_coloring(w["coloring"], g) if "coloring" in w else None
    check = record["check_id"]
    if check == "vf1":
        return check_vf1(g, tuple(w["edge"]), c, require_hypotheses=False)
    if check == "vf2":
        e = tuple(w["edge"])
        fan = grow_multifan(c, w["center"])
        return check_vf2(g, e, c, fan, require_hypotheses=False)
    if check == "edgecount":
        return check_elementary_edge_count(g, c)
    if check == "val":
        return check_val(g)
    if check == "theorem":
        return check_theorem_main(g)
    if check == "extend":
        fan = grow_multifan(c, w["center"])
        x = extend_multifan(c, fan, w["pivot"], w["beta"])
        bad = extension_violation(g, c, fan, x)
        verdict = "pass" if bad is None else "fail"
        return CheckOutcome("extend", w["graph6"], {"edge": w["edge"], "center": w["center"]}, verdict,
                            "" if bad is None else f"part ({bad[0]})", None if bad is None else {**w, **bad[1]})
    raise ValueError(f"replay not supported for check {check!r}")


# -- corpus scan ---------------------------------------------------------


@dataclass
class ScanConfig:
    budget: int = DEFAULT_BUDGET
    limit: int = DEFAULT_ORBIT_LIMIT
    restarts: int = 512
    seed: int = 0
    scope: str = "critical"  # "critical": critical graphs only; "class2": every class 2 graph
    jobs: int = 1


@dataclass
class VerificationReport:
    corpus_id: str
    checks: tuple[str, ...]
    config: ScanConfig
    tallies: dict[str, Counter] = field(default_factory=dict)
    non_pass: list[CheckOutcome] = field(default_factory=list)
    input_errors: list[str] = field(default_factory=list)
    graphs: int = 0
    undecided: int = 0
    nodes: int = 0
    extend_nonempty: int = 0
    extend_nonempty_example: str | None = None
    seconds: float = 0.0

    def add(self, o: CheckOutcome) -> None:
        self.tallies.setdefault(o.check_id, Counter())[o.verdict] += 1
        if o.verdict != "pass":
            self.non_pass.append(o)
        if o.check_id == "extend" and o.params.get("nonempty_extensions"):
            self.extend_nonempty += 1
            if self.extend_nonempty_example is None:
                self.extend_nonempty_example = o.graph6

    def count(self, check: str, verdict: str) -> int:
        return self.tallies.get(check, Counter())[verdict]

    def instances(self, check: str) -> int:
        return sum(self.tallies.get(check, Counter()).values())

    @property
    def fails(self) -> int:
        return sum(t["fail"] for t in self.tallies.values())

    def summary(self) -> dict[str, Any]:
        return {
            "type": "summary",
            "corpus": self.corpus_id,
            "graphs": self.graphs,
            "input_errors": len(self.input_errors),
            "undecided": self.undecided,
            "nodes": self.nodes,
            "tallies": {c: {v: self.tallies.get(c, Counter())[v] for v in VERDICTS} for c in self.checks},
            "fails": self.fails,
            "extend_nonempty_instances": self.extend_nonempty,
            "extend_nonempty_example": self.extend_nonempty_example,
            "theorem_min_order_k2": smallest_satisfiable_order(2),
        }

    def format_table(self) -> str:
        lines = [f"corpus {self.corpus_id}: {self.graphs} graphs, {len(self.input_errors)} input errors, "
                 f"{self.undecided} undecided, seed {self.config.seed}"]
        lines.append(f"{'check':<10} {'pass':>8} {'fail':>6} {'vacuous':>8} {'skipped':>8} {'total':>8}")
        for c in self.checks:
            t = self.tallies.get(c, Counter())
            lines.append(f"{c:<10} {t['pass']:>8} {t['fail']:>6} {t['vacuous']:>8} {t['skipped']:>8} {sum(t.values()):>8}")
        if "extend" in self.checks:
            if self.extend_nonempty:
                lines.append(f"extended fans with nonempty F': {self.extend_nonempty} instances "
                             f"(first: {self.extend_nonempty_example})")
            else:
                lines.append("extended fans with nonempty F': NONE FOUND in this corpus")
        if "theorem" in self.checks or "lemma1" in self.checks:
            lines.append(f"degree condition (k=2) first satisfiable at n = {smallest_satisfiable_order(2)}")
        return "\n".join(lines)


def evaluate_graph(g: Graph, checks: Iterable[str], config: ScanConfig) -> tuple[list[CheckOutcome], int, bool]:
    """All outcomes for one graph; returns ``(outcomes, nodes, undecided)``."""
    checks = tuple(checks)
    g6 = to_graph6_str(g)
    try:
        facts = graph_facts(g, budget=config.budget, limit=config.limit)
    except Undecided as exc:
        return [CheckOutcome(c, g6, {}, "skipped", f"undecided: {exc}") for c in checks], exc.nodes, True
    outs: list[CheckOutcome] = []
    in_scope = facts.class2 and (facts.is_critical if config.scope == "critical" else bool(facts.critical_edges))
    scope_reason = "graph not critical class 2" if config.scope == "critical" else "no critical edge in a class 2 graph"
    per_coloring = [c for c in ("vf1", "vf2", "edgecount") if c in checks]
    per_center = [c for c in ("extend", "tautypes") if c in checks]
    if per_coloring or per_center:
        if not in_scope:
            outs += [CheckOutcome(c, g6, {}, "vacuous", scope_reason) for c in per_coloring + per_center]
        else:
            for e in facts.critical_edges:
                orbits = facts.orbits(e)
                for c in orbits:
                    if "vf1" in per_coloring:
                        outs.append(check_vf1(g, e, c, facts=facts))
                    if "vf2" in per_coloring:
                        outs.append(check_vf2(g, e, c, facts=facts))
                    if "edgecount" in per_coloring:
                        outs.append(check_elementary_edge_count(g, c))
                if not orbits.complete:
                    outs += [CheckOutcome(ch, g6, {"edge": _edge_param(e)}, "skipped",
                                          f"orbit enumeration incomplete after {len(orbits)} orbits")
                             for ch in per_coloring]
                for r in e:
                    if "extend" in per_center:
                        outs.append(check_extend(g, e, r, facts=facts, restarts=config.restarts, seed=config.seed))
                    if "tautypes" in per_center:
                        outs.append(check_tau_types(g, e, r, facts=facts))
    if "val" in checks:
        outs.append(check_val(g, facts=facts))
    if "lemma1" in checks:
        outs.append(check_lemma1(g, facts=facts, restarts=config.restarts, seed=config.seed))
    if "theorem" in checks:
        outs.append(check_theorem_main(g, facts=facts))
    return outs, facts.nodes, False


def _evaluate_g6(args: tuple[str, tuple[str, ...], ScanConfig]) -> tuple[list[CheckOutcome], int, bool]:
    g6, checks, config = args
    return evaluate_graph(parse_graph6(g6), checks, config)


def scan(
    corpus: Iterable[Graph | Graph6Error | tuple[int, Graph | Graph6Error]],
    checks: Iterable[str],
    config: ScanConfig | None = None,
    *,
    corpus_id: str = "corpus",
    sink: IO[str] | None = None,
) -> VerificationReport:
    """Evaluate ``checks`` on every graph of ``corpus``.

    Parse errors in the corpus are recorded and skipped. If ``sink`` is given,
    a header line, one JSON record per outcome, and a summary line are written
    to it.
    """
    config = config or ScanConfig()
    checks = tuple(checks)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown check(s): {', '.join(unknown)}")
    rep = VerificationReport(corpus_id, checks, config)
    t0 = time.perf_counter()
    if sink is not None:
        header = {"type": "header", "corpus": corpus_id, "checks": list(checks), **asdict(config)}
        sink.write(json.dumps(header) + "\n")

    def items() -> Iterator[str]:
        for item in corpus:
            lineno = None
            if isinstance(item, tuple):
                lineno, item = item
            if isinstance(item, Graph6Error):
                where = f"line {lineno}: " if lineno is not None else ""
                rep.input_errors.append(f"{where}{item}")
                if sink is not None:
                    sink.write(json.dumps({"type": "input_error", "line": lineno, "error": str(item)}) + "\n")
                continue
            yield to_graph6_str(item)

    def consume(result: tuple[list[CheckOutcome], int, bool]) -> None:
        outs, nodes, undecided = result
        rep.graphs += 1
        rep.nodes += nodes
        rep.undecided += int(undecided)
        for o in outs:
            rep.add(o)
            if sink is not None:
                sink.write(json.dumps(o.to_record()) + "\n")

    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for res in pool.map(_evaluate_g6, ((g6, checks, config) for g6 in items()), chunksize=4):
                consume(res)
    else:
        for g6 in items():
            consume(_evaluate_g6((g6, checks, config)))
    rep.seconds = time.perf_counter() - t0
    if sink is not None:
        sink.write(json.dumps(rep.summary()) + "\n")
    return rep


def read_report(fh: IO[str]) -> list[dict[str, Any]]:
    return [json.loads(line) for line in fh if line.strip()]
