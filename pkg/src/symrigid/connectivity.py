"""Connectivity certificates: mixed cuts of covering graphs, k-blocks and
gain-mixed-connectivity of gain graphs, and symmetric separations.

A graph is n-mixed-connected when no vertex set W and edge set F with
2|W| + |F| <= n-1 disconnect it.  Equivalently, for every W with
|W| <= (n-1)/2 the remainder is (n - 2|W|)-edge-connected; the search
enumerates W and runs unit-capacity max-flow with early cutoff, so the
returned witness has minimum cost 2|W| + |F| among all disconnecting pairs.

For gain graphs the quotient-level analogue enumerates pairs (U, D),
takes components H of G - U - D, and charges each removed vertex/edge the
number of its covering copies incident to the lifted component.
"""

from __future__ import annotations

import itertools
import math
import warnings
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .covering import CoverVertex, CoveringGraph, expand
from .gain_graph import GainGraph
from .group import Subgroup, subgroup_generated


@dataclass(frozen=True)
class MixedCut:
    """A disconnecting pair: remove the vertices, then the edges."""

    removed_vertices: frozenset
    removed_edges: frozenset

    @property
    def cost(self) -> int:
        return 2 * len(self.removed_vertices) + len(self.removed_edges)


# -- integer-indexed multigraph with removable vertices -------------------------


class _FlowGraph:
    """Unit-or-weighted multigraph on integers with fast repeated cut queries.

    Vertices can be masked off per query; max-flow runs keep an undo journal
    so residual capacities are shared across queries without rebuilding.
    """

    def __init__(self, n: int, weighted_pairs: dict):
        self.n = n
        self.pairs = list(weighted_pairs.items())
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.caps: dict = {}
        for (x, y), w in weighted_pairs.items():
            self.adj[x].append(y)
            self.adj[y].append(x)
            self.caps[(x, y)] = w
            self.caps[(y, x)] = w

    def component(self, start: int, removed) -> set:
        seen = {start}
        queue = deque([start])
        adj = self.adj
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in seen and v not in removed:
                    seen.add(v)
                    queue.append(v)
        return seen

    def find_bridge(self, start: int, removed):
        """Some bridge in the component of ``start``, or None (iterative
        lowpoint DFS; parallel edges of weight >= 2 are never bridges)."""
        adj = self.adj
        caps = self.caps
        disc: dict = {}
        low: dict = {}
        stack = [(start, -1, iter(adj[start]))]
        disc[start] = low[start] = 0
        counter = 1
        parent_edge: dict = {start: None}
        order = []
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for v in it:
                if v in removed:
                    continue
                if v not in disc:
                    disc[v] = low[v] = counter
                    counter += 1
                    parent_edge[v] = u
                    order.append(v)
                    stack.append((v, u, iter(adj[v])))
                    advanced = True
                    break
                elif v != parent:
                    low[u] = min(low[u], disc[v])
                elif caps[(u, v)] >= 2:
                    low[u] = min(low[u], disc[v])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        return (p, u)
        return None

    def max_flow(self, s: int, t: int, cutoff: int, removed, journal=None):
        """BFS-augmenting flow capped at ``cutoff``; mutations are recorded
        in ``journal`` (a list of (key, delta)) when given."""
        adj, caps = self.adj, self.caps
        flow = 0
        while flow < cutoff:
            parent = {s: None}
            queue = deque([s])
            reached = False
            while queue:
                u = queue.popleft()
                if u == t:
                    reached = True
                    break
                for v in adj[u]:
                    if v not in parent and v not in removed and caps[(u, v)] > 0:
                        parent[v] = u
                        queue.append(v)
            if not reached:
                return flow
            v = t
            while parent[v] is not None:
                u = parent[v]
                caps[(u, v)] -= 1
                caps[(v, u)] += 1
                if journal is not None:
                    journal.append(((u, v), 1))
                    journal.append(((v, u), -1))
                v = u
            flow += 1
        return flow

    def undo(self, journal) -> None:
        for key, delta in journal:
            self.caps[key] += delta

    def residual_side(self, s: int, removed) -> set:
        side = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in side and v not in removed and self.caps[(u, v)] > 0:
                    side.add(v)
                    queue.append(v)
        return side

    def lambda_below(self, removed, cutoff: int):
        """(lambda, cut side) when the remainder has edge connectivity
        < cutoff, else (None, None).  The remainder must have >= 2 vertices.
        """
        kept = [v for v in range(self.n) if v not in removed]
        s = kept[0]
        comp = self.component(s, removed)
        if len(comp) < len(kept):
            return 0, comp
        if cutoff <= 1:
            return None, None
        if cutoff == 2:
            bridge = self.find_bridge(s, removed)
            if bridge is None:
                return None, None
            # One side of the bridge: vertices reached without crossing it.
            u, v = bridge
            side = self._side_avoiding(s, removed, frozenset({(u, v), (v, u)}))
            return 1, side
        best = cutoff
        best_t = None
        for t in kept[1:]:
            journal: list = []
            value = self.max_flow(s, t, best, removed, journal)
            self.undo(journal)
            if value < best:
                best, best_t = value, t
                if best == 0:
                    break
        if best_t is None:
            return None, None
        journal = []
        self.max_flow(s, best_t, cutoff, removed, journal)
        side = self.residual_side(s, removed)
        self.undo(journal)
        return best, side

    def _side_avoiding(self, s: int, removed, banned_arcs) -> set:
        side = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v in side or v in removed or (u, v) in banned_arcs:
                    continue
                side.add(v)
                queue.append(v)
        return side


# -- mixed connectivity of covering graphs -------------------------------------


def is_n_mixed_connected(cov: CoveringGraph, n: int):
    """(verdict, witness): no (W, F) with 2|W| + |F| <= n-1 disconnects.

    The witness, present iff the verdict is false, is a minimum-cost
    disconnecting pair; removals leaving at most one vertex do not count as
    disconnections.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    all_vertices = sorted(cov.vertices, key=str)
    index = {v: i for i, v in enumerate(all_vertices)}
    pair_weights: dict = {}
    for e in cov.edges:
        x, y = sorted((index[a] for a in e))
        pair_weights[(x, y)] = pair_weights.get((x, y), 0) + 1
    fg = _FlowGraph(len(all_vertices), pair_weights)

    best: tuple | None = None  # (cost, removed frozenset, side frozenset, lam)
    for w_size in range((n - 1) // 2 + 1):
        if best is not None and 2 * w_size >= best[0]:
            break
        for removed in itertools.combinations(range(len(all_vertices)), w_size):
            removed_set = frozenset(removed)
            if len(all_vertices) - w_size <= 1:
                continue
            cutoff = (best[0] if best is not None else n) - 2 * w_size
            if cutoff <= 0:
                continue
            lam, side = fg.lambda_below(removed_set, cutoff)
            if lam is None:
                continue
            cost = 2 * w_size + lam
            if best is None or cost < best[0]:
                best = (cost, removed_set, frozenset(side), lam)
    if best is None or best[0] > n - 1:
        return (True, None)
    cost, removed_set, side, lam = best
    cut_vertices = frozenset(all_vertices[i] for i in removed_set)
    cut_edges = frozenset(
        e
        for e in cov.edges
        if not (e & cut_vertices)
        and len(frozenset(index[a] for a in e) & side) == 1
    )
    assert len(cut_edges) == lam, "cut size must match the flow value"
    return (False, MixedCut(cut_vertices, cut_edges))


def max_mixed_connectivity(cov: CoveringGraph, n_max: int) -> int:
    """Largest n <= n_max with the covering n-mixed-connected (0 if none)."""
    for n in range(n_max, 0, -1):
        if is_n_mixed_connected(cov, n)[0]:
            return n
    return 0


def edge_connectivity(g: GainGraph):
    """Edge connectivity of the underlying loopless multigraph.

    A single-vertex graph has no cuts; it reports ``math.inf`` with a
    warning.
    """
    if g.n_vertices == 1:
        warnings.warn("edge connectivity of a single-vertex graph reported as inf")
        return math.inf
    vertices = sorted(g.vertices)
    index = {v: i for i, v in enumerate(vertices)}
    weights: dict = {}
    for e in g.edges:
        if e.is_loop:
            continue
        x, y = sorted((index[e.tail], index[e.head]))
        weights[(x, y)] = weights.get((x, y), 0) + 1
    cutoff = sum(weights.values()) + 1
    fg = _FlowGraph(len(vertices), weights)
    lam, _ = fg.lambda_below(frozenset(), cutoff)
    return cutoff if lam is None else lam


# -- lifted components and traces ------------------------------------------------


@lru_cache(maxsize=4096)
def _cover_index(g: GainGraph):
    """Expanded cover, adjacency labelled with quotient edge ids, and the
    covering edges of each quotient edge."""
    cov = expand(g)
    adj: dict = {v: [] for v in cov.vertices}
    by_quotient: dict = {e.id: [] for e in g.edges}
    for e in cov.edges:
        x, y = tuple(e)
        q = cov.quotient_edge[e]
        adj[x].append((y, e, q))
        adj[y].append((x, e, q))
        by_quotient[q].append(e)
    for v in adj:
        adj[v].sort(key=lambda rec: (str(rec[0]), rec[2]))
    return cov, adj, by_quotient


def lift_component(g: GainGraph, edge_ids, start: CoverVertex) -> frozenset:
    """Vertex set of the covering component of ``start`` using only lifts of
    the given quotient edges."""
    allowed = frozenset(edge_ids)
    _, adj, _ = _cover_index(g)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y, _e, q in adj[x]:
            if q in allowed and y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _anchored_lift(g: GainGraph, h_vertices, h_edges) -> frozenset:
    """Lift of a connected subgraph through the identity copy of its
    smallest vertex."""
    h_vertices = sorted(h_vertices)
    start = CoverVertex(g.group.identity(), h_vertices[0])
    lifted = lift_component(g, h_edges, start)
    missing = set(h_vertices) - {x.base for x in lifted}
    if missing:
        raise ValueError(f"subgraph is not connected; unreached vertices {missing}")
    return lifted


def vertex_trace(g: GainGraph, v: str, h_vertices, h_edges) -> frozenset:
    """Covering copies of an outside vertex v tied to the subgraph: the
    orbit of v under the gain group of the subgraph's edges plus all
    non-loop edges joining v to it."""
    h_vertices = frozenset(h_vertices)
    if v in h_vertices:
        raise ValueError(f"vertex {v!r} lies inside the subgraph")
    connecting = [
        i
        for i in g.incident_edges(v)
        if not g.edges[i].is_loop and g.edges[i].other_end(v) in h_vertices
    ]
    if not connecting:
        raise ValueError(f"vertex {v!r} has no edge into the subgraph")
    sub = g.induced_subgroup(frozenset(h_edges) | frozenset(connecting), v)
    return frozenset(CoverVertex(gamma, v) for gamma in sub.elements)


def edge_trace(g: GainGraph, edge_id: int, h_vertices, h_edges) -> frozenset:
    """Covering copies of an outside edge incident to the lifted subgraph
    (anchored at the identity copy of the smallest subgraph vertex)."""
    if edge_id in frozenset(h_edges):
        raise ValueError("edge lies inside the subgraph")
    lifted = _anchored_lift(g, h_vertices, h_edges)
    return _edge_trace_at(g, edge_id, lifted)


def _edge_trace_at(g: GainGraph, edge_id: int, lifted: frozenset) -> frozenset:
    _, _, by_quotient = _cover_index(g)
    out = frozenset(e for e in by_quotient[edge_id] if e & lifted)
    if not out:
        raise ValueError(f"edge {edge_id} has no covering copy touching the subgraph")
    return out


# -- k-blocks -------------------------------------------------------------------


@dataclass(frozen=True)
class KBlock:
    """Connected component H of G - U - D together with its lifted cost.

    ``k`` is twice the total vertex trace size plus the total edge trace
    size; the traces are anchored to the identity lift of H, so their union
    is an actual disconnecting pair of the covering graph.
    """

    h_vertices: tuple
    h_edges: frozenset
    removed_vertices: frozenset
    removed_edges: frozenset
    k: int
    vertex_traces: dict
    edge_traces: dict
    lift: frozenset
    subgroup: Subgroup

    def __repr__(self) -> str:
        return (
            f"KBlock(k={self.k}, H={self.h_vertices}, U={sorted(self.removed_vertices)},"
            f" D={sorted(self.removed_edges)})"
        )


@dataclass(frozen=True)
class SymmetricSeparation:
    removed_vertices: frozenset
    removed_edges: frozenset

    @property
    def cost(self) -> int:
        return 2 * len(self.removed_vertices) + len(self.removed_edges)


def _vertex_components(g: GainGraph, kept_vertices, kept_edges):
    """Components of the graph on ``kept_vertices`` with ``kept_edges``,
    isolated vertices included, ordered by smallest vertex."""
    kept_vertices = sorted(kept_vertices)
    adj: dict = {v: [] for v in kept_vertices}
    for i in kept_edges:
        e = g.edges[i]
        adj[e.tail].append((e.head, i))
        adj[e.head].append((e.tail, i))
    seen: set = set()
    comps = []
    for v in kept_vertices:
        if v in seen:
            continue
        verts = {v}
        edges: set = set()
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w, i in adj[u]:
                edges.add(i)
                if w not in verts:
                    verts.add(w)
                    queue.append(w)
        seen |= verts
        comps.append((tuple(sorted(verts)), frozenset(edges)))
    return comps


class _RemovalContext:
    """Per-U data reused across all D choices: the surviving edges, a
    spanning forest of G - U, and the gains of the fundamental cycles.

    When D misses the forest, the components of G - U - D are those of
    G - U, and (for a connected remainder) the surviving gain group is
    generated by the cycle gains of the surviving non-forest edges; in the
    common case that group is the whole group and the pair is dismissed in
    O(|D|).
    """

    def __init__(self, g: GainGraph, u_set: frozenset):
        self.u_set = u_set
        self.kept_vertices = tuple(v for v in g.vertices if v not in u_set)
        self.surviving = tuple(
            e.id
            for e in g.edges
            if e.tail not in u_set and e.head not in u_set
        )
        self.components = _vertex_components(g, self.kept_vertices, self.surviving)
        self.forest: set = set()
        self.cycle_gain: dict = {}
        for verts, edges in self.components:
            if not edges:
                continue
            gains, tree = g._potentials(edges, min(verts))
            self.forest.update(tree)
            for i in edges:
                if i in tree:
                    continue
                e = g.edges[i]
                self.cycle_gain[i] = gains[e.tail] * e.gain * gains[e.head].inverse()
        self.charged = frozenset(
            i for i, gain in self.cycle_gain.items() if not gain.is_identity
        )

    def surviving_gains(self, d_set: frozenset) -> frozenset:
        return frozenset(
            self.cycle_gain[i] for i in self.charged if i not in d_set
        )


def _blocks_for_pair(g, by_quotient, ctx: _RemovalContext, d_set: frozenset, k_max: int):
    """All k-blocks (k <= k_max) among the components of G - U - D."""
    full_order = g.group.order
    if not (d_set & ctx.forest):
        # Components unchanged; the only cheap-to-skip case is a connected
        # remainder whose surviving cycle gains still generate everything.
        if len(ctx.components) == 1:
            gains = ctx.surviving_gains(d_set)
            if subgroup_generated(g.group, gains).order == full_order:
                return
        comps = [
            (verts, frozenset(e for e in edges if e not in d_set))
            for verts, edges in ctx.components
        ]
    else:
        kept_edges = [i for i in ctx.surviving if i not in d_set]
        comps = _vertex_components(g, ctx.kept_vertices, kept_edges)
    for h_vertices, h_edges in comps:
        block = _examine_block(
            g,
            by_quotient,
            h_vertices,
            h_edges,
            ctx.u_set,
            d_set,
            whole=len(comps) == 1,
            full_order=full_order,
        )
        if block is not None and block.k <= k_max:
            yield block


def iter_k_blocks(g: GainGraph, k_max: int):
    """All k-blocks with k <= k_max, in deterministic enumeration order.

    Pairs (U, D) are scanned in ascending cost 2|U| + |D| (sufficient, as
    every trace has size >= 1, so k >= 2|U| + |D|).  Non-minimal pairs are
    skipped: every vertex of U must see the component, every edge of D must
    keep an endpoint there and must have a covering copy crossing the
    lifted boundary.
    """
    if k_max < 0:
        return
    vertices = list(g.vertices)
    edge_ids = sorted(g.all_edge_ids())
    _, _, by_quotient = _cover_index(g)
    contexts: dict = {}
    for cost in range(k_max + 1):
        for u_size in range(cost // 2 + 1):
            d_size = cost - 2 * u_size
            for U in itertools.combinations(vertices, u_size):
                u_set = frozenset(U)
                ctx = contexts.get(u_set)
                if ctx is None:
                    ctx = contexts[u_set] = _RemovalContext(g, u_set)
                if d_size > len(ctx.surviving):
                    continue
                for D in itertools.combinations(ctx.surviving, d_size):
                    yield from _blocks_for_pair(
                        g, by_quotient, ctx, frozenset(D), k_max
                    )


def _examine_block(g, by_quotient, h_vertices, h_edges, u_set, d_set, whole, full_order):
    if whole:
        # When H is all of G - U - D, its gain group must be proper.  An
        # edgeless remainder induces the trivial group, proper iff the group
        # itself is nontrivial.
        if h_edges:
            if g.induced_subgroup(h_edges, min(h_vertices)).order == full_order:
                return None
        elif full_order == 1:
            return None
    start = CoverVertex(g.group.identity(), min(h_vertices))
    lifted = lift_component(g, h_edges, start)
    h_vset = frozenset(h_vertices)

    edge_traces = {}
    for i in sorted(d_set):
        e = g.edges[i]
        if e.tail not in h_vset and e.head not in h_vset:
            return None  # D-edge never touches H: non-minimal
        copies = frozenset(ce for ce in by_quotient[i] if ce & lifted)
        if not any(len(ce & lifted) == 1 for ce in copies):
            return None  # no crossing copy: non-minimal
        edge_traces[i] = copies

    vertex_traces = {}
    for v in sorted(u_set):
        copies = set()
        for i in g.incident_edges(v):
            e = g.edges[i]
            if e.is_loop or e.other_end(v) not in h_vset:
                continue
            for ce in by_quotient[i]:
                if not (ce & lifted):
                    continue
                for x in ce:
                    if x.base == v:
                        copies.add(x)
        if not copies:
            return None  # U-vertex not adjacent to H: non-minimal
        vertex_traces[v] = frozenset(copies)

    if h_edges:
        sub = g.induced_subgroup(h_edges, min(h_vertices))
    else:
        sub = subgroup_generated(g.group, ())
    k = 2 * sum(len(c) for c in vertex_traces.values()) + sum(
        len(c) for c in edge_traces.values()
    )
    return KBlock(
        h_vertices=tuple(h_vertices),
        h_edges=frozenset(h_edges),
        removed_vertices=u_set,
        removed_edges=d_set,
        k=k,
        vertex_traces=vertex_traces,
        edge_traces=edge_traces,
        lift=lifted,
        subgroup=sub,
    )


def find_k_block(g: GainGraph, k_max: int):
    """The smallest-k block with k <= k_max, or None.

    Runs the cost-ascending scan repeatedly with a shrinking bound, so the
    search stops as soon as no cheaper block can exist; among equal-k blocks
    the first in enumeration order wins.
    """
    best = None
    bound = k_max
    while bound >= 0:
        block = next(iter_k_blocks(g, bound), None)
        if block is None:
            break
        best = block
        bound = block.k - 1
    return best


def is_n_gain_mixed_connected(g: GainGraph, n: int):
    """(verdict, witness block): no k-block with k <= n-1 exists.

    Existence only: the witness is the first block found in cost order,
    not necessarily one of minimum k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    block = next(iter_k_blocks(g, n - 1), None)
    return (block is None, block)


def max_gain_mixed_connectivity(g: GainGraph, n_max: int) -> int:
    block = find_k_block(g, n_max - 1)
    if block is None:
        return n_max
    return block.k  # no k'-block with k' < k exists, so connectivity equals k


def symmetric_separation(block: KBlock) -> SymmetricSeparation:
    """Union of the anchored traces; removing it disconnects the covering
    graph with the block's lift as one component."""
    removed_vertices = frozenset().union(*block.vertex_traces.values()) if block.vertex_traces else frozenset()
    removed_edges = frozenset().union(*block.edge_traces.values()) if block.edge_traces else frozenset()
    sep = SymmetricSeparation(removed_vertices, removed_edges)
    assert sep.cost == block.k, "separation cost must equal the block's k"
    return sep
