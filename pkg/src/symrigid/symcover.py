"""Symmetric covers of the covering graph built from edge-set partitions.

Each part of a partition of the quotient edge set lifts to a family of
covering-vertex sets: the connected lift of the part (which is saturated
under the part's gain group) and all its translates.  The resulting family
covers every covering edge, and two counting inequalities hold for it under
connectivity hypotheses; both are exposed here as checkable reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .connectivity import (
    edge_connectivity,
    is_n_gain_mixed_connected,
    lift_component,
)
from .covering import CoverVertex, CoveringGraph, expand, strip_fixed
from .gain_graph import GainGraph


@dataclass(frozen=True)
class CoverSet:
    """One vertex set of a symmetric cover, tagged with its source part."""

    vertices: frozenset
    part_index: int
    part_edges: frozenset
    group_order: int
    unbalanced: bool

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class SymmetricCover:
    graph: GainGraph
    partition: tuple
    sets: tuple

    @property
    def family(self) -> tuple:
        return tuple(s.vertices for s in self.sets)

    def sets_of_size_3(self) -> tuple:
        return tuple(s for s in self.sets if s.size >= 3)

    def sets_with_large_group(self) -> tuple:
        return tuple(s for s in self.sets if s.group_order >= 4)

    def sets_unbalanced(self) -> tuple:
        return tuple(s for s in self.sets if s.unbalanced)

    def overlap(self, s: CoverSet) -> frozenset:
        """Y_X: the part of X shared with other size->=3 sets."""
        other = frozenset().union(
            *(t.vertices for t in self.sets_of_size_3() if t is not s)
        ) if len(self.sets_of_size_3()) > 1 else frozenset()
        return s.vertices & other


def cover_from_partition(g: GainGraph, partition) -> SymmetricCover:
    """Build the symmetric cover of the covering graph from a partition.

    Parts are refined into connected components first (a refinement of a
    partition is again a partition, so the result is still a symmetric
    cover).  For each connected part with root its smallest vertex, the set
    is the covering component of the identity copy of the root, and every
    group translate of it joins the family; duplicates are dropped.
    """
    parts = [frozenset(p) for p in partition]
    _validate_partition(parts, g.all_edge_ids())
    refined: list[frozenset] = []
    for p in parts:
        refined.extend(g.components(p))

    seen: dict = {}
    ordered = []
    for index, part in enumerate(refined):
        support = g.vertex_support(part)
        root = min(support)
        base_set = lift_component(g, part, CoverVertex(g.group.identity(), root))
        order = len(base_set) // len(support)
        assert order * len(support) == len(base_set)
        unbalanced = not g.is_balanced(part)
        for gamma in g.group.elements():
            translated = frozenset(
                CoverVertex(gamma * x.gain, x.base) for x in base_set
            )
            if translated in seen:
                continue
            cs = CoverSet(
                vertices=translated,
                part_index=index,
                part_edges=part,
                group_order=order,
                unbalanced=unbalanced,
            )
            seen[translated] = cs
            ordered.append(cs)
    return SymmetricCover(g, tuple(refined), tuple(ordered))


def _validate_partition(parts, edge_ids) -> None:
    seen: set = set()
    for part in parts:
        if not part:
            raise ValueError("empty part in partition")
        if part & seen:
            raise ValueError("parts overlap")
        seen |= set(part)
    if seen != set(edge_ids):
        raise ValueError("parts do not cover the edge set")


def covers_all_edges(g: GainGraph, cover: SymmetricCover, cov: CoveringGraph | None = None) -> bool:
    """Every covering edge lies inside some set of the family."""
    cov = expand(g) if cov is None else cov
    for e in cov.edges:
        if not any(e <= s.vertices for s in cover.sets):
            return False
    return True


@dataclass(frozen=True)
class CoverBoundReport:
    """Both sides of a cover counting inequality, plus hypothesis status.

    When the hypotheses fail the sides are still reported but nothing is
    claimed about the inequality.
    """

    variant: str
    lhs: int
    rhs: int
    hypotheses_satisfied: bool
    hypothesis_detail: str

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def check_cover_lower_bound(
    g: GainGraph,
    cover: SymmetricCover,
    variant: str = "forced",
    hypotheses_known: bool | None = None,
) -> CoverBoundReport:
    """Evaluate sum(2|X| - 3) against its lower bound.

    ``forced`` variant: bound 2|cover V| + sum over large-group sets of size
    >= 3 of (|group| - 3); hypotheses: 6-gain-mixed-connected, plus
    2-edge-connected when the group has order >= 6.

    ``iota1`` variant: bound 2|cover V| + #unbalanced sets; hypothesis: the
    loopless quotient is 7-gain-mixed-connected.
    """
    if variant not in ("forced", "iota1"):
        raise ValueError(f"unknown variant {variant!r}")
    n_cover_vertices = g.group.order * g.n_vertices
    lhs = sum(2 * s.size - 3 for s in cover.sets)
    if variant == "forced":
        large = [s for s in cover.sets if s.size >= 3 and s.group_order >= 4]
        rhs = 2 * n_cover_vertices + sum(s.group_order - 3 for s in large)
    else:
        rhs = 2 * n_cover_vertices + len(cover.sets_unbalanced())

    if hypotheses_known is not None:
        ok, detail = hypotheses_known, "caller-supplied"
    elif variant == "forced":
        ok, _ = is_n_gain_mixed_connected(g, 6)
        detail = f"6-gain-mixed-connected: {ok}"
        if ok and g.group.order >= 6:
            lam = edge_connectivity(g)
            two_ec = lam == math.inf or lam >= 2
            detail += f"; 2-edge-connected: {two_ec}"
            ok = ok and two_ec
    else:
        cov = expand(g)
        loopless = strip_fixed(cov, g).quotient_without_loops
        ok, _ = is_n_gain_mixed_connected(loopless, 7)
        detail = f"loopless quotient 7-gain-mixed-connected: {ok}"
    return CoverBoundReport(
        variant=variant,
        lhs=lhs,
        rhs=rhs,
        hypotheses_satisfied=ok,
        hypothesis_detail=detail,
    )
