"""Count matroids on gain graphs and the rigidity decisions they support.

Three count functions on edge subsets, all of the form 2|V(X)| - 3 plus a
group-theoretic correction evaluated per connected component (overall value
= max over components):

* ``rho``   - correction 0 / 2 / 3 for balanced / unbalanced-cyclic / other;
  the forced-symmetric rigidity matroid for mirror, rotation, and
  odd-dihedral groups.
* ``mu``    - correction 0 / 1 for balanced / unbalanced; the antisymmetric
  (t = 1) matroid for groups of order 2.
* ``nu(t)`` - correction 0 for balanced; 2 when the component is
  near-balanced or its gain group is Z_l with t = 0 or +-1 (mod l);
  3 otherwise.  The character-t matroid for odd rotation orders
  5 <= k < 1000.

A set is independent iff every nonempty subset F satisfies count(F) >= |F|;
because count(F) is superadditive across components, only connected F need
checking.  The rank is the minimum of the count-sum over partitions (parts
may be taken connected), and equals the size of a greedily grown
independent set; the library computes both where feasible and insists they
agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .gain_graph import BALANCED, GainGraph
from .group import CYCLIC, DIHEDRAL, REFLECTION, GroupSpec

RHO = "rho"
MU = "mu"
NU = "nu"

DEFAULT_SUBSET_CAP = 20
DEFAULT_PARTITION_CAP = 12
DEFAULT_BASIS_CAP = 16


class InstanceTooLargeError(RuntimeError):
    """Exhaustive enumeration would exceed the configured cap."""


class CharacterizationUnknownError(NotImplementedError):
    """No combinatorial characterization is known for this group/character."""


@dataclass(frozen=True)
class CountFamily:
    kind: str
    t: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in (RHO, MU, NU):
            raise ValueError(f"unknown count family {self.kind!r}")
        if (self.kind == NU) != (self.t is not None):
            raise ValueError("nu requires a character index t; rho/mu take none")

    def validate_for(self, group: GroupSpec) -> None:
        if self.kind == RHO:
            if group.kind == DIHEDRAL and group.k % 2 == 0:
                raise CharacterizationUnknownError(
                    f"forced count for {group.name}: even dihedral groups are uncharacterized"
                )
        elif self.kind == MU:
            if group.order != 2:
                raise CharacterizationUnknownError(
                    f"antisymmetric count requires a group of order 2, not {group.name}"
                )
        else:
            if group.kind != CYCLIC or group.k % 2 == 0 or not 5 <= group.k < 1000:
                raise CharacterizationUnknownError(
                    f"character counts are available for odd rotation orders"
                    f" 5 <= k < 1000, not {group.name}"
                )

    def label(self) -> str:
        return self.kind if self.t is None else f"{self.kind}_{self.t}"


def rho() -> CountFamily:
    return CountFamily(RHO)


def mu() -> CountFamily:
    return CountFamily(MU)


def nu(t: int) -> CountFamily:
    return CountFamily(NU, t)


def count(family: CountFamily, g: GainGraph, edge_ids) -> int:
    """2|V(X)| - 3 + correction; X must be nonempty."""
    family.validate_for(g.group)
    edge_ids = frozenset(edge_ids)
    if not edge_ids:
        raise ValueError("count is defined for nonempty edge sets")
    base = 2 * len(g.vertex_support(edge_ids)) - 3
    if family.kind == RHO:
        return base + g.classify(edge_ids).beta
    if family.kind == MU:
        return base + g.classify(edge_ids).beta1
    return base + _alpha(g, edge_ids, family.t % g.group.k)


def _alpha(g: GainGraph, edge_ids: frozenset, t: int) -> int:
    """Character correction, max over connected components."""
    worst = 0
    for comp, sub in g.classify(edge_ids).component_subgroups:
        if sub.is_trivial:
            continue
        l = sub.order
        if t % l in (0, 1, l - 1):
            worst = max(worst, 2)
        elif g.is_near_balanced(comp)[0]:
            worst = max(worst, 2)
        else:
            return 3  # max already; short-circuit
    return worst


def _connected_subsets(g: GainGraph, edge_ids, must_contain: int | None = None):
    """Yield nonempty connected subsets of ``edge_ids`` in order of size.

    With ``must_contain`` only subsets through that edge are produced.
    """
    ids = sorted(edge_ids)
    n = len(ids)
    endpoints = {i: set(g.edges[i].endpoints()) for i in ids}
    for size in range(1, n + 1):
        if must_contain is not None:
            rest = [i for i in ids if i != must_contain]
            combos = (
                (must_contain,) + c for c in itertools.combinations(rest, size - 1)
            )
        else:
            combos = itertools.combinations(ids, size)
        for combo in combos:
            if _edges_connected(combo, endpoints):
                yield frozenset(combo)


def _edges_connected(combo, endpoints) -> bool:
    if len(combo) == 1:
        return True
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in combo:
        vs = list(endpoints[i])
        for v in vs:
            parent.setdefault(v, v)
        anchor = find(vs[0])
        for v in vs[1:]:
            parent[find(v)] = anchor
    edge_roots = {find(next(iter(endpoints[i]))) for i in combo}
    return len(edge_roots) == 1


def is_independent(
    family: CountFamily, g: GainGraph, edge_ids, cap: int = DEFAULT_SUBSET_CAP
):
    """Whether count(F) >= |F| for every nonempty F inside the set.

    Returns ``(True, None)`` or ``(False, violator)`` where the violator is
    a smallest (hence inclusion-minimal) violating subset.  Raises
    :class:`InstanceTooLargeError` beyond the exhaustive cap instead of
    silently truncating.
    """
    family.validate_for(g.group)
    edge_ids = frozenset(edge_ids)
    if len(edge_ids) > cap:
        raise InstanceTooLargeError(
            f"independence check on {len(edge_ids)} edges exceeds the cap of {cap}"
        )
    for subset in _connected_subsets(g, edge_ids):
        if count(family, g, subset) < len(subset):
            return (False, subset)
    return (True, None)


def _extension_independent(
    family: CountFamily, g: GainGraph, basis: frozenset, new_edge: int
) -> bool:
    """Given an independent basis, decide independence of basis + new_edge.

    Only connected subsets through the new edge can violate the count.
    """
    pool = basis | {new_edge}
    for subset in _connected_subsets(g, pool, must_contain=new_edge):
        if count(family, g, subset) < len(subset):
            return False
    return True


def _connected_partitions(g: GainGraph, edge_ids: frozenset):
    """All partitions of the edge set into connected parts.

    Canonical: the part containing the smallest remaining edge is chosen
    first, so each partition appears exactly once.
    """
    ids = sorted(edge_ids)
    if not ids:
        yield ()
        return
    endpoints = {i: set(g.edges[i].endpoints()) for i in ids}

    def rec(remaining: frozenset):
        if not remaining:
            yield ()
            return
        seed = min(remaining)
        rest = sorted(remaining - {seed})
        for size in range(0, len(rest) + 1):
            for extra in itertools.combinations(rest, size):
                part = frozenset((seed,) + extra)
                if not _edges_connected(tuple(part), endpoints):
                    continue
                for tail in rec(remaining - part):
                    yield (part,) + tail

    yield from rec(frozenset(ids))


@dataclass(frozen=True)
class RankResult:
    """Rank of an edge set, or certified bounds when exact search is off-cap.

    ``value`` is set when exact (the two routes, exhaustive partition
    minimum and greedy basis growth, must then agree).  ``upper`` always
    reflects the best partition seen, ``lower`` the largest verified
    independent set.
    """

    lower: int
    upper: int
    exact: bool
    value: int | None = None
    optimal_partition: tuple | None = None
    basis: frozenset | None = None
    notes: tuple = field(default_factory=tuple)


def rank(
    family: CountFamily,
    g: GainGraph,
    edge_ids,
    candidate_partitions=(),
    partition_cap: int = DEFAULT_PARTITION_CAP,
    basis_cap: int = DEFAULT_BASIS_CAP,
) -> RankResult:
    """Matroid rank of an edge set.

    Within caps, computes the exact rank twice (partition minimum and greedy
    basis) and asserts agreement.  Beyond caps, candidate partitions certify
    an upper bound and a partial greedy basis certifies a lower bound; the
    singleton partition is always included as a fallback upper bound.
    """
    family.validate_for(g.group)
    edge_ids = frozenset(edge_ids)
    if not edge_ids:
        return RankResult(lower=0, upper=0, exact=True, value=0, optimal_partition=())

    notes: list[str] = []
    singleton = tuple(frozenset({i}) for i in sorted(edge_ids))
    best_partition = singleton
    upper = sum(count(family, g, part) for part in singleton)
    for cand in candidate_partitions:
        cand = tuple(frozenset(p) for p in cand)
        _validate_partition(cand, edge_ids)
        value = sum(count(family, g, part) for part in cand)
        if value < upper:
            upper, best_partition = value, cand

    exhaustive_value = None
    if len(edge_ids) <= partition_cap:
        for partition in _connected_partitions(g, edge_ids):
            value = sum(count(family, g, part) for part in partition)
            if exhaustive_value is None or value < exhaustive_value:
                exhaustive_value, best = value, partition
        if exhaustive_value <= upper:
            upper, best_partition = exhaustive_value, best
    else:
        notes.append(f"partition search skipped ({len(edge_ids)} edges > cap)")

    basis: frozenset = frozenset()
    greedy_complete = True
    max_basis = 2 * len(g.vertex_support(edge_ids))
    for e in sorted(edge_ids):
        if len(basis) >= max_basis:
            break
        if len(basis) + 1 > basis_cap:
            greedy_complete = False
            notes.append(f"greedy stopped at basis size {len(basis)} (cap {basis_cap})")
            break
        if _extension_independent(family, g, basis, e):
            basis = basis | {e}
    lower = len(basis)

    if greedy_complete and exhaustive_value is not None:
        assert lower == exhaustive_value, (
            f"greedy rank {lower} != partition rank {exhaustive_value}"
        )
    exact = greedy_complete or exhaustive_value is not None
    value = None
    if greedy_complete:
        value = lower
    elif exhaustive_value is not None:
        value = exhaustive_value
    if value is not None:
        upper = min(upper, value)
        lower = max(lower, value)
    return RankResult(
        lower=lower,
        upper=upper,
        exact=exact,
        value=value,
        optimal_partition=best_partition,
        basis=basis if greedy_complete else None,
        notes=tuple(notes),
    )


def _validate_partition(parts, edge_ids: frozenset) -> None:
    seen: set = set()
    for part in parts:
        if not part:
            raise ValueError("empty part in partition")
        if part & seen:
            raise ValueError("parts overlap")
        seen |= set(part)
    if seen != set(edge_ids):
        raise ValueError("parts do not cover the edge set")


# -- rigidity decisions -------------------------------------------------------


def forced_rigidity_threshold(group: GroupSpec, n_vertices: int) -> int:
    """Spanning-rank threshold for forced rigidity: 2|V| minus the number of
    trivial fully symmetric motions."""
    if group.order == 1:
        return 2 * n_vertices - 3
    if group.kind == DIHEDRAL:
        return 2 * n_vertices
    return 2 * n_vertices - 1


def _has_isolated_vertex(g: GainGraph) -> bool:
    return any(not g.incident_edges(v) for v in g.vertices)


def is_forced_rigid_combinatorial(
    g: GainGraph,
    candidate_partitions=(),
    partition_cap: int = DEFAULT_PARTITION_CAP,
    basis_cap: int = DEFAULT_BASIS_CAP,
) -> bool:
    """Forced-symmetric rigidity: the rho-rank of E reaches the spanning
    threshold.  Graphs with isolated vertices are trivially flexible."""
    family = rho()
    family.validate_for(g.group)
    if _has_isolated_vertex(g):
        return False
    threshold = forced_rigidity_threshold(g.group, g.n_vertices)
    result = rank(
        family,
        g,
        g.all_edge_ids(),
        candidate_partitions=candidate_partitions,
        partition_cap=partition_cap,
        basis_cap=basis_cap,
    )
    if result.exact:
        return result.value >= threshold
    if result.upper < threshold:
        return False
    if result.lower >= threshold:
        return True
    raise InstanceTooLargeError(
        f"rank only bounded to [{result.lower}, {result.upper}]"
        f" against threshold {threshold}"
    )


def iota_rigidity_threshold(group: GroupSpec, t: int, n_vertices: int) -> int:
    return 2 * n_vertices - _trivial_dim_for_threshold(group, t)


def _trivial_dim_for_threshold(group: GroupSpec, t: int) -> int:
    from .numeric import trivial_motion_dim  # same table drives both oracles

    return trivial_motion_dim(group, t)


def is_iota_rigid_combinatorial(
    g: GainGraph,
    t: int,
    candidate_partitions=(),
    partition_cap: int = DEFAULT_PARTITION_CAP,
    basis_cap: int = DEFAULT_BASIS_CAP,
) -> bool:
    """Character-t rigidity for the characterized regimes.

    Order-2 groups: t=0 via rho, t=1 via mu (threshold 2|V|-2).  Odd
    rotation orders 5 <= k < 1000: via nu(t).  Rotation order 3 and any
    dihedral group: only t=0.  Everything else raises.
    """
    group = g.group
    if group.kind == DIHEDRAL or group.order == 1:
        if t == 0:
            return is_forced_rigid_combinatorial(
                g, candidate_partitions, partition_cap, basis_cap
            )
        raise CharacterizationUnknownError(
            f"{group.name}: only the fully symmetric character is characterized"
        )
    k = group.k if group.kind == CYCLIC else 2
    t = t % k
    if t == 0:
        return is_forced_rigid_combinatorial(
            g, candidate_partitions, partition_cap, basis_cap
        )
    if group.order == 2:
        family = mu()
    else:
        family = nu(t)
    family.validate_for(group)
    if _has_isolated_vertex(g):
        return False
    threshold = iota_rigidity_threshold(group, t, g.n_vertices)
    result = rank(
        family,
        g,
        g.all_edge_ids(),
        candidate_partitions=candidate_partitions,
        partition_cap=partition_cap,
        basis_cap=basis_cap,
    )
    if result.exact:
        return result.value >= threshold
    if result.upper < threshold:
        return False
    if result.lower >= threshold:
        return True
    raise InstanceTooLargeError(
        f"rank only bounded to [{result.lower}, {result.upper}]"
        f" against threshold {threshold}"
    )


def is_rigid_combinatorial(g: GainGraph, candidate_partitions=()) -> bool:
    """Plain (incidental) infinitesimal rigidity where characterized.

    Order-2 groups: forced and antisymmetric verdicts together.  Rotation
    order 3: equals forced rigidity.  Odd rotation orders 5 <= k < 1000:
    all characters.  The trivial group: ordinary generic rigidity.
    """
    group = g.group
    if group.order == 1:
        return is_forced_rigid_combinatorial(g, candidate_partitions)
    if group.order == 2 and group.kind in (REFLECTION, CYCLIC):
        return is_forced_rigid_combinatorial(
            g, candidate_partitions
        ) and is_iota_rigid_combinatorial(g, 1, candidate_partitions)
    if group.kind == CYCLIC and group.k == 3:
        return is_forced_rigid_combinatorial(g, candidate_partitions)
    if group.kind == CYCLIC and group.k % 2 == 1 and 5 <= group.k < 1000:
        if not is_forced_rigid_combinatorial(g, candidate_partitions):
            return False
        return all(
            is_iota_rigid_combinatorial(g, t, candidate_partitions)
            for t in range(2, group.k - 1)
        )
    raise CharacterizationUnknownError(
        f"incidental rigidity is uncharacterized for {group.name}"
    )
