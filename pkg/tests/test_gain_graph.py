from __future__ import annotations

import itertools

import numpy as np
import pytest

from symrigid.covering import CoverVertex, expand
from symrigid.connectivity import lift_component
from symrigid.gain_graph import (
    BALANCED,
    OTHER,
    UNBALANCED_CYCLIC,
    GainGraph,
    InvalidGainGraphError,
)
from symrigid.group import GroupSpec

from conftest import GROUP_POOL, random_gain_graph

Z6 = GroupSpec.cyclic(6)
CS = GroupSpec.reflection()
C3V = GroupSpec.dihedral(3)


def test_identity_loop_rejected():
    with pytest.raises(InvalidGainGraphError):
        GainGraph(Z6, ["v"], [("v", "v", "id")])


def test_duplicate_parallel_rejected():
    with pytest.raises(InvalidGainGraphError):
        GainGraph(Z6, ["a", "b"], [("a", "b", "r^1"), ("a", "b", "r^1")])
    # Reversed orientation with inverted gain duplicates the same orbit.
    with pytest.raises(InvalidGainGraphError):
        GainGraph(Z6, ["a", "b"], [("a", "b", "r^1"), ("b", "a", "r^5")])


def test_duplicate_loops_rejected():
    with pytest.raises(InvalidGainGraphError):
        GainGraph(Z6, ["v"], [("v", "v", "r^2"), ("v", "v", "r^2")])
    # Inverse-gain loops lift to the same covering edges.
    with pytest.raises(InvalidGainGraphError):
        GainGraph(Z6, ["v"], [("v", "v", "r^2"), ("v", "v", "r^4")])


def test_parallel_distinct_gains_allowed():
    g = GainGraph(Z6, ["a", "b"], [("a", "b", "id"), ("a", "b", "r^1"), ("a", "b", "r^5")])
    assert g.n_edges == 3


def test_walk_gain_basics(fig1b):
    g = fig1b.graph
    assert g.walk_gain(["1"]).is_identity
    # Forward and back across one edge cancels.
    assert g.walk_gain(["2", 1, "1", (1, -1), "2"]).is_identity
    # The loop labelled with the rotation.
    assert g.walk_gain(["1", 2, "1"]) == g.group.rotation()
    with pytest.raises(ValueError):
        g.walk_gain(["1", 0, "1"])  # edge 0 joins 2 and 1


def test_walk_gain_concatenation():
    rng = np.random.default_rng(7)
    for _ in range(40):
        g = random_gain_graph(rng, GROUP_POOL[int(rng.integers(4))])
        # Random closed walk made of two closed walks at the same vertex.
        e = g.edges[0]
        w1 = [e.tail, (e.id, 1), e.head, (e.id, -1), e.tail]
        f = g.edges[int(rng.integers(g.n_edges))]
        if f.tail != e.tail:
            continue
        w2 = [f.tail, (f.id, 1), f.head, (f.id, -1), f.tail]
        combined = w1[:-1] + w2
        assert g.walk_gain(combined) == g.walk_gain(w1) * g.walk_gain(w2)


def test_induced_subgroup_tree_is_trivial():
    g = GainGraph(Z6, ["a", "b", "c"], [("a", "b", "r^2"), ("b", "c", "r^3")])
    assert g.induced_subgroup({0, 1}, "a").order == 1


def test_induced_subgroup_examples(fig1b):
    assert fig1b.graph.induced_subgroup({0, 1, 2, 3}, "1").order == 6
    g = GainGraph(Z6, ["v"], [("v", "v", "r^2")])
    sub = g.induced_subgroup({0}, "v")
    assert sub.order == 3 and sub.is_cyclic


def test_induced_subgroup_against_lifted_component():
    # Independent route: the gains gamma with (gamma, base) reachable in the
    # lifted subgraph form exactly the walk-gain group at the base vertex.
    rng = np.random.default_rng(11)
    for _ in range(60):
        g = random_gain_graph(rng, GROUP_POOL[int(rng.integers(4))])
        edges = g.all_edge_ids()
        base = min(g.vertex_support(edges))
        comp = next(c for c in g.components(edges) if base in g.vertex_support(c))
        sub = g.induced_subgroup(comp, base)
        lifted = lift_component(g, comp, CoverVertex(g.group.identity(), base))
        gains = {x.gain for x in lifted if x.base == base}
        assert gains == set(sub.elements)


def test_induced_subgroup_base_independence():
    rng = np.random.default_rng(13)
    for _ in range(40):
        g = random_gain_graph(rng, GROUP_POOL[int(rng.integers(4))])
        for comp in g.components(g.all_edge_ids()):
            support = sorted(g.vertex_support(comp))
            orders = {g.induced_subgroup(comp, v).order for v in support}
            classes = {g.induced_subgroup(comp, v).classify() for v in support}
            assert len(orders) == 1 and len(classes) == 1


def test_classify_examples(fig2a, fig2b, fig4):
    k5 = fig2a.partition("rho14")[0]
    assert fig2a.graph.classify(k5).kind == BALANCED
    assert fig2a.graph.beta(k5) == 0

    triple = fig2b.partition("rho12")[0]
    cls = fig2b.graph.classify(triple)
    assert cls.kind == UNBALANCED_CYCLIC and cls.beta == 2

    block = fig4.partition("mu15")[0]
    cls4 = fig4.graph.classify(block)
    assert cls4.beta1 == 1

    whole = fig4.graph  # mirror group: unbalanced non-cyclic needs a dihedral group
    assert whole.classify(whole.all_edge_ids()).kind in (UNBALANCED_CYCLIC, OTHER)


def test_classify_dihedral_other(fig1b):
    assert fig1b.graph.classify({0, 1, 2, 3}).kind == OTHER
    assert fig1b.graph.beta({0, 1, 2, 3}) == 3


def test_beta_is_max_over_components():
    g = GainGraph(
        Z6,
        ["a", "b", "c", "d"],
        [("a", "b", "id"), ("a", "b", "r^1"), ("c", "d", "id")],
    )
    edge_sets = [{0, 1}, {2}, {0, 1, 2}]
    betas = [g.beta(s) for s in edge_sets]
    assert betas == [2, 0, 2]
    comps = g.components({0, 1, 2})
    assert max(g.beta(c) for c in comps) == g.beta({0, 1, 2})


def test_switch_identity_and_tree():
    rng = np.random.default_rng(3)
    for _ in range(30):
        g = random_gain_graph(rng, GROUP_POOL[int(rng.integers(4))])
        assert g.switch({}) == g
        switched = g.spanning_switch()
        # A spanning forest in each component now carries identity gains.
        for comp in switched.components(switched.all_edge_ids()):
            base = min(switched.vertex_support(comp))
            gains, tree = switched._potentials(comp, base)
            assert all(switched.edges[i].gain.is_identity for i in tree)


def test_switch_preserves_classification():
    rng = np.random.default_rng(5)
    z3 = GroupSpec.cyclic(3)
    g = GainGraph(
        z3,
        ["a", "b", "c"],
        [("a", "b", "id"), ("b", "c", "r^1"), ("c", "a", "r^1"), ("a", "a", "r^1")],
    )
    subsets = [frozenset(c) for r in range(1, 5) for c in itertools.combinations(range(4), r)]
    # All switchings of a small graph over a small group.
    for values in itertools.product(z3.elements(), repeat=3):
        h = dict(zip(["a", "b", "c"], values))
        switched = g.switch(h)
        for s in subsets:
            assert switched.classify(s).kind == g.classify(s).kind


def test_switch_parallel_pair_example(fig1b):
    g = fig1b.graph
    h = {"1": g.group.identity(), "2": g.group.mirror()}
    switched = g.switch(h)
    assert {str(switched.edges[0].gain), str(switched.edges[1].gain)} == {"s", "id"}
    assert switched.classify({0, 1}).kind == g.classify({0, 1}).kind
    assert (
        switched.induced_subgroup({0, 1}, "1").order
        == g.induced_subgroup({0, 1}, "1").order
    )


def test_orientation_reversal_is_neutral():
    g = GainGraph(Z6, ["a", "b", "c"], [("a", "b", "r^1"), ("b", "c", "r^2"), ("c", "a", "r^3")])
    flipped = GainGraph(
        Z6, ["a", "b", "c"], [("b", "a", "r^5"), ("b", "c", "r^2"), ("c", "a", "r^3")]
    )
    for subset in [{0}, {0, 1}, {0, 1, 2}]:
        assert g.classify(subset).kind == flipped.classify(subset).kind
        assert g.beta(subset) == flipped.beta(subset)
    assert expand(g).n_edges == expand(flipped).n_edges


def test_split_examples():
    g = GainGraph(Z6, ["v", "u", "w"], [("v", "u", "id"), ("v", "w", "r^1")])
    s = g.split("v", ({0, 1}, set()))
    assert "v.2" in s.vertices
    assert not s.incident_edges("v.2")

    loop = GainGraph(Z6, ["v"], [("v", "v", "r^2")])
    arc = loop.split("v", (set(), set()))
    e = arc.edges[0]
    assert (e.tail, e.head) == ("v.1", "v.2") and not e.is_loop
    assert arc.is_balanced({0})

    two = GainGraph(Z6, ["v"], [("v", "v", "r^1"), ("v", "v", "r^2")])
    split = two.split("v", (set(), set()))
    sub = split.induced_subgroup({0, 1}, "v.1")
    # Fundamental cycle gain r^1 * r^-2 generates the whole rotation group.
    assert sub.order == 6

    with pytest.raises(ValueError):
        g.split("v", ({0}, set()))  # misses edge 1


def test_near_balance_requires_unbalanced_and_connected():
    g = GainGraph(Z6, ["a", "b"], [("a", "b", "id")])
    assert g.is_near_balanced({0}) == (False, None)
    g2 = GainGraph(Z6, ["a", "b", "c", "d"], [("a", "b", "r^1"), ("c", "d", "id")])
    with pytest.raises(ValueError):
        g2.is_near_balanced({0, 1})


def test_near_balance_parallel_pair():
    g = GainGraph(Z6, ["a", "b"], [("a", "b", "id"), ("a", "b", "r^1")])
    ok, witness = g.is_near_balanced({0, 1})
    assert ok
    v, (p1, p2) = witness
    image = g.restriction({0, 1}).split(v, (p1, p2))
    assert image.is_balanced(image.all_edge_ids())


def test_near_balance_unbalanced_cycle_is_near_balanced():
    # Splitting a vertex of the labelled edge opens the cycle into a tree.
    tri = GainGraph(Z6, ["a", "b", "c"], [("a", "b", "id"), ("b", "c", "id"), ("c", "a", "r^1")])
    ok, witness = tri.is_near_balanced({0, 1, 2})
    assert ok and witness[0] in ("a", "c")


def test_near_balance_single_loop_and_failures():
    z5 = GroupSpec.cyclic(5)
    assert GainGraph(z5, ["v"], [("v", "v", "r^1")]).is_near_balanced({0})[0]
    two = GainGraph(Z6, ["v"], [("v", "v", "r^1"), ("v", "v", "r^2")])
    assert two.is_near_balanced({0, 1}) == (False, None)
    three = GainGraph(
        Z6, ["v"], [("v", "v", "r^1"), ("v", "v", "r^2"), ("v", "v", "r^3")]
    )
    assert three.is_near_balanced({0, 1, 2}) == (False, None)
    # Two loops at distinct vertices cannot both be opened by one split.
    far = GainGraph(
        Z6, ["a", "b"], [("a", "a", "r^1"), ("b", "b", "r^1"), ("a", "b", "id")]
    )
    assert far.is_near_balanced({0, 1, 2}) == (False, None)


def test_restriction_and_json_round_trip():
    rng = np.random.default_rng(17)
    for _ in range(25):
        g = random_gain_graph(rng, GROUP_POOL[int(rng.integers(4))])
        assert GainGraph.from_json(g.to_json()) == g
        some = frozenset(list(g.all_edge_ids())[: max(1, g.n_edges // 2)])
        sub = g.restriction(some)
        assert sub.n_edges == len(some)
        assert set(sub.vertices) == set(g.vertex_support(some))
