"""Covering graphs of gain graphs, with free group action and covering map.

Expanding a gain graph on vertex set V over a group of order n yields a
simple graph on n*|V| vertices: vertex (g, v) is the g-translate of v, and
each quotient edge (i, j, a) lifts to the orbit {{(g, i), (g*a, j)}}.  Loops
whose gain has order 2 produce half-size orbits because the two endpoints
swap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gain_graph import GainGraph, InvalidGainGraphError
from .group import GroupElement, GroupSpec


@dataclass(frozen=True)
class CoverVertex:
    gain: GroupElement
    base: str

    def label(self) -> str:
        return self.base if self.gain.is_identity else f"{self.gain}.{self.base}"

    def __str__(self) -> str:
        return self.label()

    def __repr__(self) -> str:
        return f"~{self.label()}"


def _vkey(v) -> str:
    return str(v)


def _ekey(e) -> tuple:
    return tuple(sorted(_vkey(x) for x in e))


class CoveringGraph:
    """Simple graph with a free group action and optional quotient maps.

    ``action`` maps each group element to a vertex permutation (a dict).
    Graphs produced by :func:`expand` also carry ``quotient_vertex`` /
    ``quotient_edge`` maps back to the gain graph they came from.
    """

    def __init__(
        self,
        group: GroupSpec,
        vertices,
        edges,
        action: dict,
        quotient_vertex: dict | None = None,
        quotient_edge: dict | None = None,
    ) -> None:
        self.group = group
        self.vertices = tuple(vertices)
        self.edges = tuple(sorted((frozenset(e) for e in edges), key=_ekey))
        self.action = action
        self.quotient_vertex = quotient_vertex
        self.quotient_edge = quotient_edge
        self._validate()

    def _validate(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate covering vertices")
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"covering edge {set(e)} is not a 2-set")
            if not e <= vset:
                raise ValueError("covering edge touches unknown vertex")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate covering edges")
        ident = self.group.identity()
        eset = set(self.edges)
        for g in self.group.elements():
            perm = self.action[g]
            if set(perm.keys()) != vset or set(perm.values()) != vset:
                raise ValueError(f"action of {g} is not a vertex permutation")
            for e in self.edges:
                x, y = tuple(e)
                if frozenset({perm[x], perm[y]}) not in eset:
                    raise ValueError(f"action of {g} is not an automorphism")
            if g != ident:
                for v in self.vertices:
                    if perm[v] == v:
                        raise ValueError(
                            f"action is not free: {g} fixes vertex {v}"
                        )

    # -- basics ---------------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict:
        adj: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            x, y = tuple(e)
            adj[x].append((y, e))
            adj[y].append((x, e))
        for v in adj:
            adj[v].sort(key=lambda p: _vkey(p[0]))
        return adj

    def apply(self, g: GroupElement, v):
        return self.action[g][v]

    def vertex_orbits(self) -> tuple:
        seen: set = set()
        orbits = []
        for v in sorted(self.vertices, key=_vkey):
            if v in seen:
                continue
            orbit = frozenset(self.action[g][v] for g in self.group.elements())
            seen |= orbit
            orbits.append(orbit)
        return tuple(orbits)

    def edge_orbit(self, e) -> frozenset:
        out = set()
        x, y = tuple(e)
        for g in self.group.elements():
            out.add(frozenset({self.action[g][x], self.action[g][y]}))
        return frozenset(out)

    def fixed_edges(self) -> frozenset:
        """Edges {x, y} swapped onto themselves by some non-identity element."""
        out = set()
        ident = self.group.identity()
        for e in self.edges:
            x, y = tuple(e)
            for g in self.group.elements():
                if g == ident:
                    continue
                if self.action[g][x] == y and self.action[g][y] == x:
                    out.add(e)
                    break
        return frozenset(out)

    def without_edges(self, drop) -> "CoveringGraph":
        drop = set(drop)
        keep = [e for e in self.edges if e not in drop]
        qe = None
        if self.quotient_edge is not None:
            qe = {e: i for e, i in self.quotient_edge.items() if e not in drop}
        return CoveringGraph(
            self.group, self.vertices, keep, self.action, self.quotient_vertex, qe
        )

    def to_dot(self) -> str:
        lines = ["graph covering {"]
        for v in self.vertices:
            lines.append(f'  "{_vkey(v)}";')
        for e in self.edges:
            x, y = sorted((_vkey(a) for a in e))
            attr = ""
            if self.quotient_edge is not None:
                attr = f' [label="{self.quotient_edge[e]}"]'
            lines.append(f'  "{x}" -- "{y}"{attr};')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        index = {v: i for i, v in enumerate(self.vertices)}
        data = {
            "group": self.group.to_json(),
            "vertices": [
                {"gain": str(v.gain), "base": v.base} if isinstance(v, CoverVertex) else str(v)
                for v in self.vertices
            ],
            "edges": sorted([sorted(index[x] for x in e) for e in self.edges]),
        }
        if self.quotient_edge is not None:
            data["quotient_edges"] = {
                str(sorted(index[x] for x in e)): i for e, i in self.quotient_edge.items()
            }
        return data

    @staticmethod
    def from_json(data: dict) -> "CoveringGraph":
        """Rebuild a standard (expand-produced) covering from JSON."""
        group = GroupSpec.from_json(data["group"])
        vertices = []
        for v in data["vertices"]:
            if not isinstance(v, dict):
                raise ValueError("only standard coverings (gain,base) can be loaded")
            vertices.append(CoverVertex(group.parse(v["gain"]), v["base"]))
        edges = [frozenset({vertices[i], vertices[j]}) for i, j in data["edges"]]
        action = _standard_action(group, vertices)
        return CoveringGraph(group, vertices, edges, action)

    def __repr__(self) -> str:
        return f"CoveringGraph({self.group.name}, |V|={self.n_vertices}, |E|={self.n_edges})"


def _standard_action(group: GroupSpec, vertices) -> dict:
    action = {}
    for g in group.elements():
        action[g] = {v: CoverVertex(g * v.gain, v.base) for v in vertices}
    return action


@lru_cache(maxsize=4096)
def expand(g: GainGraph) -> CoveringGraph:
    """Covering graph of a gain graph: vertices (gamma, v), one edge orbit
    per quotient edge.  Treated as immutable and cached per gain graph."""
    group = g.group
    vertices = [CoverVertex(gamma, v) for v in g.vertices for gamma in group.elements()]
    edges: dict = {}
    for e in g.edges:
        for gamma in group.elements():
            x = CoverVertex(gamma, e.tail)
            y = CoverVertex(gamma * e.gain, e.head)
            if x == y:
                raise InvalidGainGraphError(
                    f"edge {e.id} lifts to a loop; gain graph invariants violated"
                )
            cover_edge = frozenset({x, y})
            prev = edges.get(cover_edge)
            if prev is not None and prev != e.id:
                raise InvalidGainGraphError(
                    f"edges {prev} and {e.id} lift to the same covering edge"
                )
            edges[cover_edge] = e.id
    cov = CoveringGraph(
        group,
        vertices,
        edges.keys(),
        _standard_action(group, vertices),
        quotient_vertex={v: v.base for v in vertices},
        quotient_edge=dict(edges),
    )
    # Orbit sizes: |G|, halved exactly for loops with an order-2 gain.
    sizes: dict[int, int] = {}
    for e, i in cov.quotient_edge.items():
        sizes[i] = sizes.get(i, 0) + 1
    for e in g.edges:
        expected = group.order
        if e.is_loop and e.gain.order() == 2:
            expected //= 2
        assert sizes[e.id] == expected, f"edge {e.id}: orbit size {sizes[e.id]}"
    return cov


@dataclass(frozen=True)
class QuotientResult:
    graph: GainGraph
    representatives: tuple
    edge_covers: tuple  # edge_covers[i] = frozenset of covering edges of edge i


def quotient_of(cov: CoveringGraph) -> QuotientResult:
    """Collapse a covering graph back to a gain graph.

    Representatives are the smallest vertex of each orbit (by label); a
    spanning forest is then switched to identity gains so round trips are
    deterministic.  The result matches the original gain graph up to
    switching and orientation reversal.
    """
    group = cov.group
    orbits = cov.vertex_orbits()
    rep_of: dict = {}
    gamma_of: dict = {}
    reps = []
    for orbit in orbits:
        rep = min(orbit, key=_vkey)
        reps.append(rep)
        for g in group.elements():
            x = cov.action[g][rep]
            rep_of[x] = rep
            gamma_of[x] = g
    names = {rep: _vkey(rep) for rep in reps}
    if len(set(names.values())) != len(reps):
        raise ValueError("orbit representatives have colliding labels")

    seen: set = set()
    quotient_edges = []
    covers = []
    for e in sorted(cov.edges, key=_ekey):
        if e in seen:
            continue
        orbit = cov.edge_orbit(e)
        seen |= orbit
        candidates = []
        for f in orbit:
            x, y = tuple(f)
            for a, b in ((x, y), (y, x)):
                gain = gamma_of[a].inverse() * gamma_of[b]
                candidates.append((names[rep_of[a]], names[rep_of[b]], gain))
        tail, head, gain = min(candidates, key=lambda c: (c[0], c[1], str(c[2])))
        quotient_edges.append((tail, head, gain))
        covers.append(orbit)

    graph = GainGraph(group, [names[r] for r in reps], quotient_edges)
    graph = graph.spanning_switch()
    return QuotientResult(graph, tuple(reps), tuple(covers))


@dataclass(frozen=True)
class FixedEdgeReport:
    fixed_edges: frozenset
    quotient_loops_of_order_2: tuple


@dataclass(frozen=True)
class StripResult:
    cover_without_fixed: CoveringGraph
    quotient_without_loops: GainGraph
    report: FixedEdgeReport


def strip_fixed(cov: CoveringGraph, g: GainGraph) -> StripResult:
    """Remove fixed edges from the cover and all loops from the quotient.

    For groups of order 2 the two removals correspond exactly; for larger
    groups only loops with an order-2 gain produce fixed edges.
    """
    fixed = cov.fixed_edges()
    loops2 = tuple(
        e.id for e in g.edges if e.is_loop and e.gain.order() == 2
    )
    if cov.quotient_edge is not None:
        from_loops = {e for e in cov.edges if cov.quotient_edge[e] in set(loops2)}
        assert from_loops == fixed, "fixed edges must come from order-2 loops"
    non_loops = [e for e in g.edges if not e.is_loop]
    if len(non_loops) < g.n_edges:
        # Keep every vertex: deleting loops must not shrink the vertex set.
        stripped_quotient = GainGraph(
            g.group, g.vertices, [(e.tail, e.head, e.gain) for e in non_loops]
        )
    else:
        stripped_quotient = g
    return StripResult(
        cov.without_edges(fixed),
        stripped_quotient,
        FixedEdgeReport(fixed, loops2),
    )
