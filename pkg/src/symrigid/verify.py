"""Reproduction checks for the bundled example graphs.

Each check recomputes one recorded fact about a fixture (connectivity
level, count value, partition sum, rigidity verdict, cover family, trace
size) and compares it with the frozen expectation.  The CLI command
``verify-paper`` runs them all and fails loudly on any mismatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .connectivity import (
    edge_connectivity,
    edge_trace,
    is_n_mixed_connected,
    vertex_trace,
)
from .covering import expand, quotient_of, strip_fixed
from .fixtures import Fixture, load_all
from .gain_graph import GainGraph
from .group import GroupSpec, subgroup_generated
from .matroid import (
    count,
    forced_rigidity_threshold,
    iota_rigidity_threshold,
    is_independent,
    mu,
    rho,
)
from .numeric import motion_space
from .symcover import cover_from_partition, covers_all_edges


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _check(name: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(ok), detail)


def _cover_size_checks(fx: Fixture):
    cov = expand(fx.graph)
    yield _check(
        f"{fx.name}: covering size",
        cov.n_vertices == fx.expect("covering_vertices")
        and cov.n_edges == fx.expect("covering_edges"),
        f"|V|={cov.n_vertices}, |E|={cov.n_edges}",
    )


def _mixed_checks(fx: Fixture):
    cov = expand(fx.graph)
    if "mixed_connected" in fx.expected:
        level = fx.expect("mixed_connected")
        ok, _ = is_n_mixed_connected(cov, level)
        yield _check(f"{fx.name}: {level}-mixed-connected", ok, "holds")
    if "not_mixed_connected" in fx.expected:
        level = fx.expect("not_mixed_connected")
        ok, cut = is_n_mixed_connected(cov, level)
        yield _check(
            f"{fx.name}: not {level}-mixed-connected",
            not ok,
            f"witness cost {cut.cost}" if cut else "no witness",
        )


def _partition_sum_check(fx: Fixture):
    (pname, parts), = fx.partitions.items()
    family = mu() if pname.startswith("mu") else rho()
    total = sum(count(family, fx.graph, p) for p in fx.partition(pname))
    want = fx.expect("partition_sum")
    threshold_key = (
        "forced_threshold" if "forced_threshold" in fx.expected else "antisymmetric_threshold"
    )
    threshold = fx.expect(threshold_key)
    yield _check(
        f"{fx.name}: partition sum {pname}",
        total == want and total < threshold,
        f"sum {total} < threshold {threshold}",
    )


def _rigidity_checks(fx: Fixture):
    (pname,) = fx.partitions.keys()
    parts = fx.partition(pname)
    if "forced_rigid" in fx.expected:
        from .matroid import is_forced_rigid_combinatorial

        comb = is_forced_rigid_combinatorial(fx.graph, candidate_partitions=[parts])
        rep = motion_space(fx.graph, 0)
        want = fx.expect("forced_rigid")
        yield _check(
            f"{fx.name}: forced rigidity verdicts",
            comb == want and rep.is_rigid == want,
            f"combinatorial {comb}, numeric {rep.verdict}"
            f" (kernel {rep.kernel_dim}, trivial {rep.trivial_dim})",
        )
    if "iota1_rigid" in fx.expected:
        from .matroid import is_iota_rigid_combinatorial

        comb = is_iota_rigid_combinatorial(fx.graph, 1, candidate_partitions=[parts])
        rep = motion_space(fx.graph, 1)
        want = fx.expect("iota1_rigid")
        yield _check(
            f"{fx.name}: antisymmetric rigidity verdicts",
            comb == want and rep.is_rigid == want,
            f"combinatorial {comb}, numeric {rep.verdict}"
            f" (kernel {rep.kernel_dim}, trivial {rep.trivial_dim})",
        )


def _fig2b_extra_checks(fx: Fixture):
    lam = edge_connectivity(fx.graph)
    yield _check(
        "fig2b: quotient not 2-edge-connected",
        lam == fx.expect("edge_connectivity") and lam < 2,
        f"edge connectivity {lam}",
    )
    triple = fx.partition("rho12")[0]
    yield _check(
        "fig2b: triple-loop count",
        count(rho(), fx.graph, triple) == 1,
        "rho of a triple-loop set is 1",
    )
    x_trace = vertex_trace(
        fx.graph, "x", {"y1"}, fx.graph.loops_at("y1")
    )
    yield _check(
        "fig2b: center trace size",
        len(x_trace) == 6,
        f"|x_H| = {len(x_trace)}",
    )


def _fig2a_extra_checks(fx: Fixture):
    k5 = fx.partition("rho14")[0]
    yield _check(
        "fig2a: balanced 5-clique count",
        fx.graph.is_balanced(k5) and count(rho(), fx.graph, k5) == 7,
        "rho of a balanced 5-clique is 7",
    )


def _fig4_extra_checks(fx: Fixture):
    block = fx.partition("mu15")[0]
    yield _check(
        "fig4: clique-with-mirror-edges count",
        count(mu(), fx.graph, block) == 10,
        "mu of a 6-clique plus two mirror edges is 10",
    )
    stripped = strip_fixed(expand(fx.graph), fx.graph)
    yield _check(
        "fig4: no fixed edges",
        not stripped.report.fixed_edges
        and stripped.quotient_without_loops.n_edges == fx.graph.n_edges,
        "loopless graph is unchanged",
    )


def _fig1b_checks(fx: Fixture):
    g = fx.graph
    sub = g.induced_subgroup(g.all_edge_ids(), "1")
    yield _check(
        "fig1b: induced gain group",
        sub.order == fx.expect("induced_subgroup_order"),
        f"order {sub.order}",
    )
    gen = subgroup_generated(g.group, [g.group.rotation(), g.group.mirror()])
    yield _check(
        "fig1b: mirror and rotation generate the group",
        gen.order == 6 and gen.classify() == "dihedral",
        f"order {gen.order}, {gen.classify()}",
    )
    loop_gain = g.walk_gain(["1", 2, "1"])
    yield _check(
        "fig1b: loop walk gain",
        loop_gain == g.group.rotation(),
        f"gain {loop_gain}",
    )
    sc = cover_from_partition(g, fx.partition("worked"))
    first = sorted(str(v) for v in sc.sets[0].vertices)
    yield _check(
        "fig1b: symmetric cover family",
        len(sc.sets) == fx.expect("cover_family_size")
        and first == fx.expect("cover_first_set")
        and covers_all_edges(g, sc),
        f"{len(sc.sets)} sets, first {first}",
    )
    cov = expand(g)
    rt = quotient_of(cov)
    # Map new edge ids to original ones through the shared covering edges.
    back = {
        i: cov.quotient_edge[next(iter(orbit))]
        for i, orbit in enumerate(rt.edge_covers)
    }
    same = all(
        g.classify({back[i] for i in c}).kind == rt.graph.classify(c).kind
        for c in ({0}, {1}, {2}, {3}, {0, 1}, {0, 1, 2, 3})
    )
    yield _check(
        "fig1b: expand/quotient round trip",
        rt.graph.n_vertices == 2 and rt.graph.n_edges == 4 and same,
        "balance classes preserved",
    )


def _construction_checks():
    # A mirror-symmetric pair of 4-cliques joined by a fixed matching: the
    # matching edges are exactly the fixed edges, and each quotient loop is
    # dependent in the antisymmetric matroid.
    cs = GroupSpec.reflection()
    verts = ["a", "b", "c", "d"]
    edges = [(x, y, "id") for i, x in enumerate(verts) for y in verts[i + 1 :]]
    edges += [(v, v, "s") for v in verts]
    g = GainGraph(cs, verts, edges)
    cov = expand(g)
    stripped = strip_fixed(cov, g)
    ok = (
        len(stripped.report.fixed_edges) == 4
        and stripped.report.quotient_loops_of_order_2 == (6, 7, 8, 9)
        and stripped.quotient_without_loops.n_edges == 6
    )
    yield _check(
        "matching construction: fixed edges are the matching",
        ok,
        f"{len(stripped.report.fixed_edges)} fixed edges removed",
    )
    loop_ok, viol = is_independent(mu(), g, {6})
    yield _check(
        "matching construction: a mirror loop is dependent",
        not loop_ok and viol == frozenset({6}) and count(mu(), g, {6}) == 0,
        "mu(loop) = 0",
    )


def _trace_case_checks():
    z2 = GroupSpec.cyclic(2)
    h2 = GainGraph(z2, ["u", "w"], [("u", "w", "id"), ("u", "u", "r^1")])
    case1 = edge_trace(h2, 1, {"u", "w"}, {0})
    yield _check(
        "edge trace, order-2 loop on a balanced subgraph",
        len(case1) == 1,
        f"|e_H| = {len(case1)}",
    )
    z6 = GroupSpec.cyclic(6)
    h6 = GainGraph(
        z6, ["u", "w"], [("u", "w", "id"), ("u", "w", "r^2"), ("u", "w", "r^3")]
    )
    case3 = edge_trace(h6, 2, {"u", "w"}, {0, 1})
    yield _check(
        "edge trace, group-enlarging chord",
        len(case3) == 6,
        f"|e_H| = {len(case3)} = 2*3",
    )
    g = GainGraph(z2, ["u", "v"], [("v", "u", "id"), ("v", "u", "r^1")])
    vt = vertex_trace(g, "v", {"u"}, frozenset())
    yield _check(
        "vertex trace, two connecting edges of distinct gain",
        len(vt) == 2,
        f"|v_H| = {len(vt)}",
    )


def run_checks(only: str | None = None) -> list[CheckResult]:
    fixtures = load_all()
    producers: list = []
    for name, fx in fixtures.items():
        if only and name != only:
            continue
        producers.append(_cover_size_checks(fx))
        producers.append(_mixed_checks(fx))
        if fx.partitions and "partition_sum" in fx.expected:
            producers.append(_partition_sum_check(fx))
        producers.append(_rigidity_checks(fx))
        if name == "fig1b":
            producers.append(_fig1b_checks(fx))
        if name == "fig2a":
            producers.append(_fig2a_extra_checks(fx))
        if name == "fig2b":
            producers.append(_fig2b_extra_checks(fx))
        if name == "fig4":
            producers.append(_fig4_extra_checks(fx))
    if only is None:
        producers.append(_construction_checks())
        producers.append(_trace_case_checks())
    results = []
    for producer in producers:
        results.extend(producer)
    return results
