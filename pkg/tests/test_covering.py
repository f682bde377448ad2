from __future__ import annotations

import itertools

import numpy as np
import pytest

from symrigid.covering import (
    CoveringGraph,
    CoverVertex,
    expand,
    quotient_of,
    strip_fixed,
)
from symrigid.gain_graph import GainGraph
from symrigid.group import GroupSpec

from conftest import GROUP_POOL, random_gain_graph

Z2 = GroupSpec.cyclic(2)
Z3 = GroupSpec.cyclic(3)
Z6 = GroupSpec.cyclic(6)
CS = GroupSpec.reflection()


def test_single_loop_expands_to_cycle():
    g = GainGraph(Z3, ["v"], [("v", "v", "r^1")])
    cov = expand(g)
    assert cov.n_vertices == 3 and cov.n_edges == 3
    degrees = {v: 0 for v in cov.vertices}
    for e in cov.edges:
        for x in e:
            degrees[x] += 1
    assert set(degrees.values()) == {2}


def test_fig1b_cover_counts(fig1b):
    cov = expand(fig1b.graph)
    assert cov.n_vertices == 12 and cov.n_edges == 21


def test_order_two_loop_gives_fixed_edge():
    g = GainGraph(Z2, ["v"], [("v", "v", "r^1")])
    cov = expand(g)
    assert cov.n_edges == 1
    assert cov.fixed_edges() == frozenset(cov.edges)


def test_orbit_sizes_against_brute_force():
    rng = np.random.default_rng(23)
    for _ in range(40):
        g = random_gain_graph(rng, GROUP_POOL[int(rng.integers(4))])
        cov = expand(g)
        # Brute force: regenerate each edge orbit from its definition.
        seen = set()
        total = 0
        for e in g.edges:
            orbit = {
                frozenset(
                    {
                        CoverVertex(gamma, e.tail),
                        CoverVertex(gamma * e.gain, e.head),
                    }
                )
                for gamma in g.group.elements()
            }
            expected = g.group.order
            if e.is_loop and e.gain.order() == 2:
                expected //= 2
            assert len(orbit) == expected
            seen |= orbit
            total += len(orbit)
        assert total == cov.n_edges and seen == set(cov.edges)


def test_expand_action_is_free_automorphism():
    rng = np.random.default_rng(29)
    for _ in range(20):
        g = random_gain_graph(rng, GROUP_POOL[int(rng.integers(4))])
        cov = expand(g)  # CoveringGraph validates freeness on construction
        assert cov.n_vertices == g.group.order * g.n_vertices
        for gamma in g.group.elements():
            for v in cov.vertices:
                assert cov.quotient_vertex[cov.apply(gamma, v)] == cov.quotient_vertex[v]


def test_nonfree_action_rejected():
    verts = ["a", "b"]
    edges = [frozenset({"a", "b"})]
    ident = Z2.identity()
    flip = Z2.rotation()
    action = {ident: {"a": "a", "b": "b"}, flip: {"a": "a", "b": "b"}}
    with pytest.raises(ValueError, match="free"):
        CoveringGraph(Z2, verts, edges, action)


def _round_trip_classes_match(g):
    cov = expand(g)
    rt = quotient_of(cov)
    assert rt.graph.group == g.group
    assert rt.graph.n_vertices == g.n_vertices
    assert rt.graph.n_edges == g.n_edges
    back = {
        i: cov.quotient_edge[next(iter(orbit))]
        for i, orbit in enumerate(rt.edge_covers)
    }
    ids = sorted(rt.graph.all_edge_ids())
    for r in range(1, min(len(ids), 4) + 1):
        for combo in itertools.combinations(ids, r):
            new_cls = rt.graph.classify(frozenset(combo))
            old_cls = g.classify(frozenset(back[i] for i in combo))
            assert new_cls.kind == old_cls.kind


def test_quotient_round_trip_small_random():
    rng = np.random.default_rng(31)
    for _ in range(30):
        g = random_gain_graph(rng, GROUP_POOL[int(rng.integers(4))], max_vertices=3, max_edges=5)
        _round_trip_classes_match(g)


def test_quotient_round_trip_fixtures(fig1b, fig2b):
    _round_trip_classes_match(fig1b.graph)
    # Large fixture: structural counts only.
    cov = expand(fig2b.graph)
    rt = quotient_of(cov)
    assert rt.graph.n_vertices == 7 and rt.graph.n_edges == 24


def test_quotient_of_hand_built_triangle():
    # A plain triangle with a free 3-fold rotation collapses to one loop.
    verts = ["a", "b", "c"]
    edges = [frozenset({"a", "b"}), frozenset({"b", "c"}), frozenset({"c", "a"})]
    ident, r, r2 = Z3.elements()
    action = {
        ident: {"a": "a", "b": "b", "c": "c"},
        r: {"a": "b", "b": "c", "c": "a"},
        r2: {"a": "c", "b": "a", "c": "b"},
    }
    cov = CoveringGraph(Z3, verts, edges, action)
    rt = quotient_of(cov)
    assert rt.graph.n_vertices == 1
    (e,) = rt.graph.edges
    assert e.is_loop and e.gain.order() == 3


def test_strip_fixed_no_loops_is_identity(fig4):
    cov = expand(fig4.graph)
    res = strip_fixed(cov, fig4.graph)
    assert not res.report.fixed_edges
    assert res.cover_without_fixed.n_edges == cov.n_edges
    assert res.quotient_without_loops is fig4.graph


def test_strip_fixed_matching_construction():
    # Two mirror copies of a 4-clique plus a fixed matching.
    verts = ["a", "b", "c", "d"]
    edges = [(x, y, "id") for i, x in enumerate(verts) for y in verts[i + 1 :]]
    edges += [(v, v, "s") for v in verts]
    g = GainGraph(CS, verts, edges)
    cov = expand(g)
    assert cov.n_edges == 12 + 4
    res = strip_fixed(cov, g)
    assert len(res.report.fixed_edges) == 4
    assert res.cover_without_fixed.n_edges == 12
    assert res.quotient_without_loops.n_edges == 6
    assert res.quotient_without_loops.n_vertices == 4


def test_strip_fixed_higher_order_loops():
    g = GainGraph(Z6, ["v"], [("v", "v", "r^2"), ("v", "v", "r^3")])
    cov = expand(g)
    res = strip_fixed(cov, g)
    # Only the half-turn loop lifts to fixed edges.
    assert res.report.quotient_loops_of_order_2 == (1,)
    assert len(res.report.fixed_edges) == 3
    assert res.quotient_without_loops.n_edges == 0
    assert res.quotient_without_loops.n_vertices == 1


def test_dot_export_mentions_quotient_ids(fig1b):
    dot = expand(fig1b.graph).to_dot()
    assert dot.startswith("graph covering {")
    assert 'label="2"' in dot and dot.count("--") == 21


def test_covering_json_round_trip(fig1b):
    cov = expand(fig1b.graph)
    again = CoveringGraph.from_json(cov.to_json())
    assert again.n_vertices == cov.n_vertices
    assert set(map(frozenset, again.edges)) == set(map(frozenset, cov.edges))
