"""Generate the bundled fixture files.

The five example graphs are transcribed by hand; this script rebuilds the
JSON shipped in ``src/symrigid/fixtures`` and re-verifies every recorded
expectation (connectivity levels, partition sums, rigidity verdicts) before
writing, so a transcription slip cannot survive.

Run from the repository root:  python tools/build_fixtures.py
"""

from __future__ import annotations

import itertools
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from symrigid.connectivity import edge_connectivity, is_n_mixed_connected
from symrigid.covering import expand
from symrigid.gain_graph import GainGraph
from symrigid.group import GroupSpec
from symrigid.matroid import count, mu, rho

OUT = Path(__file__).resolve().parent.parent / "src" / "symrigid" / "fixtures"

REFERENCE = "reference"  # stated alongside the source figures
DERIVED = "derived"  # computed here and frozen


def ref(value):
    return {"value": value, "provenance": REFERENCE}


def derived(value):
    return {"value": value, "provenance": DERIVED}


def fig1b():
    g = GainGraph(
        GroupSpec.dihedral(3),
        ["1", "2"],
        [
            ("2", "1", "id"),
            ("2", "1", "s"),
            ("1", "1", "r^1"),
            ("1", "1", "s*r^2"),
        ],
    )
    partition = [[0, 1], [2], [3]]
    expected = {
        "covering_vertices": derived(12),
        "covering_edges": derived(21),
        "induced_subgroup_order": ref(6),
        "cover_family_size": ref(8),
        "cover_first_set": ref(["1", "2", "s.1", "s.2"]),
    }
    return g, {"worked": partition}, expected, (
        "Two-orbit gain graph over the order-6 dihedral group: a parallel"
        " pair plus two loops."
    )


def _block20(arc_gains, diagonal_gains):
    """Four 5-cliques in a ring; per-block arc gains and two diagonals."""
    vertices = []
    for i in range(4):
        vertices += [f"p{i}", f"p{i}r", f"p{i}l", f"p{i}rr", f"p{i}ll"]
    edges = []
    k5_sets = []
    for i in range(4):
        block = [f"p{i}", f"p{i}r", f"p{i}l", f"p{i}rr", f"p{i}ll"]
        ids = []
        for a, b in itertools.combinations(block, 2):
            ids.append(len(edges))
            edges.append((a, b, "id"))
        k5_sets.append(ids)
    singles = []
    for i in range(4):
        singles.append(len(edges))
        edges.append((f"p{i}rr", f"p{i}ll", arc_gains[i]))
    for a, b in [("p0l", "p1r"), ("p1l", "p2r"), ("p2l", "p3r"), ("p3l", "p0r")]:
        singles.append(len(edges))
        edges.append((a, b, "id"))
    for (a, b), gain in zip([("p2", "p0"), ("p3", "p1")], diagonal_gains):
        singles.append(len(edges))
        edges.append((a, b, gain))
    partition = k5_sets + [[i] for i in singles]
    return vertices, edges, partition


def fig2a():
    vertices, edges, partition = _block20(["s"] * 4, ["s", "s"])
    g = GainGraph(GroupSpec.reflection(), vertices, edges)
    expected = {
        "covering_vertices": derived(40),
        "covering_edges": derived(100),
        "mixed_connected": ref(5),
        "not_mixed_connected": ref(6),
        "partition_sum": ref(38),
        "forced_threshold": ref(39),
        "forced_rigid": ref(False),
    }
    return g, {"rho14": partition}, expected, (
        "Mirror-symmetric ring of four 5-cliques whose covering graph is"
        " 5-mixed-connected but not forced-rigid."
    )


def fig3():
    vertices, edges, partition = _block20(["s", "s", "s*r^1", "s*r^1"], ["r^1", "r^1"])
    g = GainGraph(GroupSpec.dihedral(3), vertices, edges)
    expected = {
        "covering_vertices": derived(120),
        "covering_edges": derived(300),
        "mixed_connected": ref(5),
        "partition_sum": derived(38),
        "forced_threshold": ref(40),
        "forced_rigid": ref(False),
    }
    return g, {"rho14": partition}, expected, (
        "Order-6 dihedral variant of the four-clique ring; 5-mixed-connected"
        " covering, not forced-rigid."
    )


def fig2b():
    vertices = ["x"] + [f"y{i}" for i in range(1, 7)]
    edges = []
    loop_sets = []
    for i in range(1, 7):
        ids = []
        for gain in ("r^1", "r^2", "r^3"):
            ids.append(len(edges))
            edges.append((f"y{i}", f"y{i}", gain))
        loop_sets.append(ids)
    spoke_singles = []
    for i in range(1, 7):
        spoke_singles.append(len(edges))
        edges.append(("x", f"y{i}", "id"))
    g = GainGraph(GroupSpec.cyclic(6), vertices, edges)
    partition = loop_sets + [[i] for i in spoke_singles]
    expected = {
        "covering_vertices": derived(42),
        "covering_edges": derived(126),
        "mixed_connected": ref(6),
        "edge_connectivity": derived(1),
        "partition_sum": ref(12),
        "forced_threshold": ref(13),
        "forced_rigid": ref(False),
    }
    return g, {"rho12": partition}, expected, (
        "Six-fold rotational star of triple loops: 6-mixed-connected covering"
        " but a 1-edge-connected quotient, not forced-rigid."
    )


def fig4():
    vertices = []
    for i in range(6):
        vertices += [f"b{i}v{j}" for j in range(1, 7)]
    edges = []
    block_sets = []
    for i in range(6):
        ids = []
        block = [f"b{i}v{j}" for j in range(1, 7)]
        for a, b in itertools.combinations(block, 2):
            ids.append(len(edges))
            edges.append((a, b, "id"))
        for a, b in [(3, 4), (4, 5)]:
            ids.append(len(edges))
            edges.append((f"b{i}v{a}", f"b{i}v{b}", "s"))
        block_sets.append(ids)
    singles = []
    ring = [(0, 1, "id"), (1, 2, "id"), (2, 3, "id"), (3, 4, "id"), (4, 5, "s"), (5, 0, "id")]
    for a, b, gain in ring:
        singles.append(len(edges))
        edges.append((f"b{a}v6", f"b{b}v2", gain))
    for a, b in [(0, 3), (1, 4), (2, 5)]:
        singles.append(len(edges))
        edges.append((f"b{a}v1", f"b{b}v1", "id"))
    g = GainGraph(GroupSpec.reflection(), vertices, edges)
    partition = block_sets + [[i] for i in singles]
    expected = {
        "covering_vertices": derived(72),
        "covering_edges": derived(222),
        "mixed_connected": ref(6),
        "partition_sum": ref(69),
        "antisymmetric_threshold": ref(70),
        "iota1_rigid": ref(False),
    }
    return g, {"mu15": partition}, expected, (
        "Mirror-symmetric ring of six 6-cliques with doubled mirror edges:"
        " 6-mixed-connected covering, not antisymmetrically rigid."
    )


def verify(name, g, partitions, expected):
    t0 = time.monotonic()
    cov = expand(g)
    assert cov.n_vertices == expected["covering_vertices"]["value"], name
    assert cov.n_edges == expected["covering_edges"]["value"], name
    if "mixed_connected" in expected:
        level = expected["mixed_connected"]["value"]
        ok, _ = is_n_mixed_connected(cov, level)
        assert ok, f"{name}: covering is not {level}-mixed-connected"
    if "not_mixed_connected" in expected:
        level = expected["not_mixed_connected"]["value"]
        ok, cut = is_n_mixed_connected(cov, level)
        assert not ok, f"{name}: covering unexpectedly {level}-mixed-connected"
        print(f"  {name}: {level}-mixed witness cost {cut.cost}")
    if "edge_connectivity" in expected:
        assert edge_connectivity(g) == expected["edge_connectivity"]["value"], name
    if "partition_sum" in expected:
        family = mu() if "mu15" in partitions else rho()
        (pname, parts), = partitions.items()
        total = sum(count(family, g, p) for p in parts)
        assert total == expected["partition_sum"]["value"], (name, total)
    if "induced_subgroup_order" in expected:
        order = g.induced_subgroup(g.all_edge_ids(), "1").order
        assert order == expected["induced_subgroup_order"]["value"], name
    print(f"  {name}: verified in {time.monotonic() - t0:.1f}s")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, builder in [
        ("fig1b", fig1b),
        ("fig2a", fig2a),
        ("fig2b", fig2b),
        ("fig3", fig3),
        ("fig4", fig4),
    ]:
        g, partitions, expected, description = builder()
        verify(name, g, partitions, expected)
        data = g.to_json()
        data["name"] = name
        data["description"] = description
        data["partitions"] = partitions
        data["expected"] = expected
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
