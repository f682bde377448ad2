"""Quotient gain graphs: group-labeled directed multigraphs.

A gain graph is a directed multigraph whose edges carry group elements.
Reversing an edge inverts its gain, so the orientation is only a reference.
Loops and parallel edges are allowed, subject to the rule that no two edges
may lift to the same edge orbit of the covering graph (the covering graph
must stay simple):

* loops with identity gain are forbidden,
* two parallel edges with equal gain (after orientation normalization) are
  forbidden,
* two loops at one vertex whose gains are equal or mutually inverse are
  forbidden.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .group import (
    CYCLIC_NONTRIVIAL,
    DIHEDRAL_SUBGROUP,
    TRIVIAL,
    GroupElement,
    GroupSpec,
    Subgroup,
    subgroup_generated,
)

BALANCED = "balanced"
UNBALANCED_CYCLIC = "unbalanced_cyclic"
OTHER = "other"

_BETA = {BALANCED: 0, UNBALANCED_CYCLIC: 2, OTHER: 3}


class InvalidGainGraphError(ValueError):
    """The edge data violates a gain graph invariant."""


@dataclass(frozen=True)
class Edge:
    id: int
    tail: str
    head: str
    gain: GroupElement

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def endpoints(self) -> tuple[str, str]:
        return (self.tail, self.head)

    def other_end(self, v: str) -> str:
        return self.head if v == self.tail else self.tail


@dataclass(frozen=True)
class BalanceClass:
    """Balance classification of an edge subset, per connected component."""

    kind: str
    component_subgroups: tuple[tuple[frozenset, Subgroup], ...]

    @property
    def beta(self) -> int:
        """0 balanced, 2 unbalanced cyclic, 3 otherwise."""
        return _BETA[self.kind]

    @property
    def beta1(self) -> int:
        """0 balanced, 1 otherwise."""
        return 0 if self.kind == BALANCED else 1


class GainGraph:
    """Immutable gain graph over a fixed group.

    Vertices are strings; edges get stable integer ids 0..m-1 in input order.
    """

    def __init__(self, group: GroupSpec, vertices, edges) -> None:
        self.group = group
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidGainGraphError("duplicate vertex ids")
        vertex_set = set(self.vertices)
        built = []
        for i, (tail, head, gain) in enumerate(edges):
            tail, head = str(tail), str(head)
            if tail not in vertex_set or head not in vertex_set:
                raise InvalidGainGraphError(f"edge {i} touches unknown vertex")
            if isinstance(gain, str):
                gain = group.parse(gain)
            if gain.group != group:
                raise InvalidGainGraphError(f"edge {i} gain from the wrong group")
            built.append(Edge(i, tail, head, gain))
        self.edges: tuple[Edge, ...] = tuple(built)
        self._validate()
        self._incidence: dict[str, tuple[int, ...]] = {v: () for v in self.vertices}
        inc: dict[str, list[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.tail].append(e.id)
            if not e.is_loop:
                inc[e.head].append(e.id)
        self._incidence = {v: tuple(ids) for v, ids in inc.items()}

    def _validate(self) -> None:
        seen: set[tuple] = set()
        for e in self.edges:
            if e.is_loop:
                if e.gain.is_identity:
                    raise InvalidGainGraphError(
                        f"edge {e.id}: loop with identity gain lifts to a loop"
                    )
                key = (e.tail, e.tail, frozenset({e.gain, e.gain.inverse()}))
            else:
                a = (e.tail, e.head, e.gain)
                b = (e.head, e.tail, e.gain.inverse())
                key = min(
                    (a, b), key=lambda t: (t[0], t[1], t[2].ref, t[2].rot)
                )
            if key in seen:
                raise InvalidGainGraphError(
                    f"edge {e.id}: duplicates the covering orbit of an earlier edge"
                )
            seen.add(key)

    # -- trivia -------------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge(self, edge_id: int) -> Edge:
        return self.edges[edge_id]

    def all_edge_ids(self) -> frozenset:
        return frozenset(e.id for e in self.edges)

    def incident_edges(self, v: str) -> tuple[int, ...]:
        return self._incidence[v]

    def loops_at(self, v: str) -> tuple[int, ...]:
        return tuple(i for i in self._incidence[v] if self.edges[i].is_loop)

    def vertex_support(self, edge_ids) -> frozenset:
        out = set()
        for i in edge_ids:
            e = self.edges[i]
            out.add(e.tail)
            out.add(e.head)
        return frozenset(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GainGraph)
            and self.group == other.group
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.group, self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"GainGraph({self.group.name}, |V|={self.n_vertices}, |E|={self.n_edges})"

    # -- walks ---------------------------------------------------------------

    def walk_gain(self, walk) -> GroupElement:
        """Gain of an alternating vertex/edge walk ``[v0, e0, v1, e1, ...]``.

        Edge entries are edge ids, or ``(edge_id, sign)`` pairs; the sign is
        required for loops traversed backwards and inferred everywhere else.
        """
        if len(walk) % 2 == 0:
            raise ValueError("walk must start and end with a vertex")
        gain = self.group.identity()
        for pos in range(1, len(walk), 2):
            at, entry, nxt = walk[pos - 1], walk[pos], walk[pos + 1]
            if isinstance(entry, tuple):
                edge_id, sign = entry
            else:
                edge_id, sign = entry, None
            e = self.edges[edge_id]
            if e.is_loop:
                if not (at == e.tail and nxt == e.tail):
                    raise ValueError(f"walk leaves loop {edge_id} at a foreign vertex")
                sign = 1 if sign is None else sign
            elif e.tail == at and e.head == nxt:
                sign = 1
            elif e.head == at and e.tail == nxt:
                sign = -1
            else:
                raise ValueError(
                    f"edge {edge_id} does not join {at!r} and {nxt!r}"
                )
            gain = gain * (e.gain if sign == 1 else e.gain.inverse())
        return gain

    # -- components and induced subgroups -------------------------------------

    def components(self, edge_ids) -> tuple[frozenset, ...]:
        """Connected components of the subgraph spanned by ``edge_ids``.

        Components are returned as frozensets of edge ids, ordered by their
        smallest edge id.
        """
        return _components_cached(self, frozenset(edge_ids))

    def induced_subgroup(self, edge_ids, base: str) -> Subgroup:
        """Gain group of closed walks at ``base`` using only ``edge_ids``.

        Computed from fundamental cycles of a spanning tree of the component
        of ``base``; the result is exactly the closed-walk gain group at
        ``base``, and its order and shape do not depend on the base vertex.
        """
        edge_ids = frozenset(edge_ids)
        if base not in self.vertex_support(edge_ids):
            raise ValueError(f"base vertex {base!r} not in the edge set's support")
        gains, _tree = self._potentials(edge_ids, base)
        gens = set()
        for i in edge_ids:
            e = self.edges[i]
            if e.tail in gains and e.head in gains:
                gens.add(gains[e.tail] * e.gain * gains[e.head].inverse())
        return subgroup_generated(self.group, gens)

    def _potentials(self, edge_ids, base: str):
        """Tree-walk gains from ``base`` within its component of ``edge_ids``."""
        gains = {base: self.group.identity()}
        tree: list[int] = []
        frontier = [base]
        by_vertex: dict[str, list[Edge]] = {}
        for i in sorted(edge_ids):
            e = self.edges[i]
            by_vertex.setdefault(e.tail, []).append(e)
            by_vertex.setdefault(e.head, []).append(e)
        while frontier:
            v = frontier.pop()
            for e in by_vertex.get(v, ()):
                if e.is_loop:
                    continue
                w = e.other_end(v)
                if w in gains:
                    continue
                step = e.gain if e.tail == v else e.gain.inverse()
                gains[w] = gains[v] * step
                tree.append(e.id)
                frontier.append(w)
        return gains, tree

    def classify(self, edge_ids) -> BalanceClass:
        """Balance classification; beta is the max over connected components."""
        edge_ids = frozenset(edge_ids)
        if not edge_ids:
            raise ValueError("cannot classify an empty edge set")
        return _classify_cached(self, edge_ids)

    def beta(self, edge_ids) -> int:
        return self.classify(edge_ids).beta

    def is_balanced(self, edge_ids) -> bool:
        return self.classify(edge_ids).kind == BALANCED

    # -- switching -------------------------------------------------------------

    def switch(self, h: dict) -> "GainGraph":
        """Relabel every edge (i, j, a) to h(i) * a * h(j)^-1.

        Vertices missing from ``h`` keep the identity.  Switching preserves
        the balance class of every edge subset.
        """
        ident = self.group.identity()
        table = {v: h.get(v, ident) for v in self.vertices}
        new_edges = [
            (e.tail, e.head, table[e.tail] * e.gain * table[e.head].inverse())
            for e in self.edges
        ]
        return GainGraph(self.group, self.vertices, new_edges)

    def spanning_switch(self, edge_ids=None) -> "GainGraph":
        """Switch so that a spanning forest (lowest-id roots) has identity gains."""
        edge_ids = self.all_edge_ids() if edge_ids is None else frozenset(edge_ids)
        h = {}
        seen: set[str] = set()
        for root in self.vertices:
            if root in seen or root not in self.vertex_support(edge_ids):
                continue
            gains, _ = self._potentials(edge_ids, root)
            # A tree edge i->j has potential g_j = g_i * a, so the switch
            # h(i) * a * h(j)^-1 with h = potential makes it the identity.
            for v, g in gains.items():
                if v not in seen:
                    h[v] = g
                    seen.add(v)
        return self.switch(h)

    # -- splitting ---------------------------------------------------------------

    def split(self, v: str, part: tuple) -> "GainGraph":
        """Split vertex ``v`` into ``v.1``/``v.2`` along a 2-partition.

        ``part`` is a pair of edge-id collections partitioning the non-loop
        edges at ``v`` (either side may be empty).  Edges keep their ids and
        labels; each loop at ``v`` becomes an arc from ``v.1`` to ``v.2``
        with the same label.
        """
        part1, part2 = (frozenset(part[0]), frozenset(part[1]))
        at_v = frozenset(i for i in self.incident_edges(v) if not self.edges[i].is_loop)
        if part1 & part2 or (part1 | part2) != at_v:
            raise ValueError("parts must partition the non-loop edges at the vertex")
        v1, v2 = _fresh_names(self.vertices, v)
        new_vertices = [w for w in self.vertices if w != v] + [v1, v2]
        new_edges = []
        for e in self.edges:
            if e.is_loop and e.tail == v:
                new_edges.append((v1, v2, e.gain))
                continue
            new_name = v1 if e.id in part1 else v2 if e.id in part2 else None
            tail = e.tail if e.tail != v else new_name
            head = e.head if e.head != v else new_name
            new_edges.append((tail, head, e.gain))
        return GainGraph(self.group, new_vertices, new_edges)

    def is_near_balanced(self, edge_ids):
        """Whether a connected unbalanced set becomes balanced after some split.

        Tries every vertex of the set and every 2-partition of its incident
        non-loop edges (exponential in the degree; fine at desk scale).
        Returns ``(False, None)`` or ``(True, (vertex, (part1, part2)))``.
        """
        edge_ids = frozenset(edge_ids)
        if not edge_ids:
            raise ValueError("empty edge set")
        if len(self.components(edge_ids)) != 1:
            raise ValueError("near-balance is defined only for connected sets")
        return _near_balanced_cached(self, edge_ids)

    # -- restriction ---------------------------------------------------------------

    def restriction(self, edge_ids) -> "GainGraph":
        """Subgraph on the support of ``edge_ids``; edge ids are renumbered
        in increasing order of the original ids (mapping: position -> old id)."""
        edge_ids = sorted(frozenset(edge_ids))
        verts = sorted(self.vertex_support(edge_ids))
        return GainGraph(
            self.group,
            verts,
            [(self.edges[i].tail, self.edges[i].head, self.edges[i].gain) for i in edge_ids],
        )

    # -- JSON ------------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "vertices": list(self.vertices),
            "edges": [
                {"tail": e.tail, "head": e.head, "gain": str(e.gain)}
                for e in self.edges
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "GainGraph":
        group = GroupSpec.from_json(data["group"])
        edges = [(e["tail"], e["head"], e["gain"]) for e in data["edges"]]
        return GainGraph(group, data["vertices"], edges)


def _fresh_names(existing, v: str) -> tuple[str, str]:
    suffix = ""
    while f"{v}.1{suffix}" in existing or f"{v}.2{suffix}" in existing:
        suffix += "_"
    return f"{v}.1{suffix}", f"{v}.2{suffix}"


@lru_cache(maxsize=200_000)
def _components_cached(g: GainGraph, edge_ids: frozenset) -> tuple:
    remaining = set(edge_ids)
    by_vertex: dict[str, list[int]] = {}
    for i in edge_ids:
        e = g.edges[i]
        by_vertex.setdefault(e.tail, []).append(i)
        by_vertex.setdefault(e.head, []).append(i)
    comps = []
    while remaining:
        seed = min(remaining)
        comp = set()
        frontier = [g.edges[seed].tail]
        visited = set()
        while frontier:
            v = frontier.pop()
            if v in visited:
                continue
            visited.add(v)
            for i in by_vertex.get(v, ()):
                if i in remaining:
                    comp.add(i)
                    frontier.append(g.edges[i].other_end(v))
        remaining -= comp
        comps.append(frozenset(comp))
    comps.sort(key=min)
    return tuple(comps)


@lru_cache(maxsize=200_000)
def _classify_cached(g: GainGraph, edge_ids: frozenset) -> BalanceClass:
    per_comp = []
    worst = BALANCED
    for comp in g.components(edge_ids):
        base = min(g.vertex_support(comp))
        sub = g.induced_subgroup(comp, base)
        per_comp.append((comp, sub))
        shape = sub.classify()
        if shape == DIHEDRAL_SUBGROUP:
            worst = OTHER
        elif shape == CYCLIC_NONTRIVIAL and worst == BALANCED:
            worst = UNBALANCED_CYCLIC
    return BalanceClass(worst, tuple(per_comp))


@lru_cache(maxsize=100_000)
def _near_balanced_cached(g: GainGraph, edge_ids: frozenset):
    sub = g.restriction(edge_ids)
    if sub.is_balanced(sub.all_edge_ids()):
        return (False, None)
    old_ids = sorted(edge_ids)
    for v in sub.vertices:
        non_loops = [i for i in sub.incident_edges(v) if not sub.edges[i].is_loop]
        # Unordered 2-partitions: the first non-loop edge stays in part 1.
        rest = non_loops[1:] if non_loops else []
        for bits in itertools.product((0, 1), repeat=len(rest)):
            part1 = frozenset(non_loops[:1]) | {
                i for i, b in zip(rest, bits) if b == 0
            }
            part2 = frozenset(i for i, b in zip(rest, bits) if b == 1)
            image = sub.split(v, (part1, part2))
            if image.is_balanced(image.all_edge_ids()):
                def back(ids):
                    return frozenset(old_ids[i] for i in ids)

                return (True, (v, (back(part1), back(part2))))
    return (False, None)
