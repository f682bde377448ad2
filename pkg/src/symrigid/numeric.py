"""Numerical rigidity oracle for symmetric frameworks.

Places the covering graph at a random symmetric position, builds the
rigidity matrix, restricts it to symmetry-adapted velocity subspaces (one
per character of a cyclic or mirror group; the invariant subspace for any
group), and reads rigidity off kernel dimensions.

Genericity is approximated by randomness: verdicts are computed at several
seeded placements and any disagreement raises instead of returning a silent
answer.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .covering import CoverVertex, CoveringGraph, expand
from .gain_graph import GainGraph
from .group import CYCLIC, DIHEDRAL, REFLECTION, GroupElement, GroupSpec

DEFAULT_REL_TOL = 1e-8


class IndeterminateRankError(RuntimeError):
    """Numerical ranks disagreed across seeds; no verdict is returned."""


@dataclass(frozen=True)
class Placement:
    """Quotient coordinates extended equivariantly to the covering graph."""

    quotient: dict
    full: dict
    seed: int


@dataclass(frozen=True)
class RigidityMatrix:
    matrix: np.ndarray
    rows: tuple  # covering edges, in canonical order
    columns: tuple  # (covering vertex, coordinate) pairs


@dataclass(frozen=True)
class MotionSpaceReport:
    t: int
    subspace_dim: int
    rank: int
    kernel_dim: int
    trivial_dim: int
    seeds: tuple

    @property
    def verdict(self) -> str:
        return "rigid" if self.kernel_dim == self.trivial_dim else "flexible"

    @property
    def is_rigid(self) -> bool:
        return self.kernel_dim == self.trivial_dim


def character_exponent(g: GroupElement) -> int:
    """Exponent of an element in a cyclic-like group (mirror groups count
    the reflection as the generator of an order-2 group)."""
    if g.group.kind == REFLECTION:
        return 1 if g.ref else 0
    if g.group.kind == CYCLIC:
        return g.rot
    raise ValueError("dihedral groups have no single character exponent")


def character_modulus(group: GroupSpec) -> int:
    if group.kind == REFLECTION:
        return 2
    if group.kind == CYCLIC:
        return group.k
    raise ValueError("dihedral groups are not cyclic-like")


def character_value(g: GroupElement, t: int) -> complex:
    """omega**(t*gamma) for the cyclic-like character t."""
    k = character_modulus(g.group)
    return cmath.exp(2j * cmath.pi * t * character_exponent(g) / k)


def trivial_motion_dim(group: GroupSpec, t: int) -> int:
    """Dimension of the trivial motions transforming by character t.

    Order-2 groups: 1 for t=0 (the preserved rotation or in-mirror
    translation) and 2 for t=1.  Larger rotation groups: 1 for
    t in {0, 1, k-1}, else 0.  Dihedral groups: 0 (forced case only).
    The trivial group keeps all 3 rigid motions.
    """
    if group.kind == DIHEDRAL:
        if t != 0:
            raise NotImplementedError(
                "character subspaces for dihedral groups are only available at t=0"
            )
        return 0
    k = character_modulus(group)
    t = t % k
    if group.order == 1:
        return 3
    if group.order == 2:
        return 1 if t == 0 else 2
    return 1 if t in (0, 1, k - 1) else 0


def forced_trivial_dim(group: GroupSpec) -> int:
    return trivial_motion_dim(group, 0)


def symmetric_generic_placement(
    g: GainGraph, seed: int, max_attempts: int = 100
) -> Placement:
    """Seeded uniform quotient coordinates in [-1, 1]^2, extended by the
    group action.  Resamples on coordinate collisions (distance < 1e-9)."""
    elements = g.group.elements()
    matrices = {gamma: gamma.matrix() for gamma in elements}
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        quotient = {v: rng.uniform(-1.0, 1.0, size=2) for v in g.vertices}
        full = {
            CoverVertex(gamma, v): matrices[gamma] @ quotient[v]
            for v in g.vertices
            for gamma in elements
        }
        points = list(full.values())
        ok = True
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                if np.linalg.norm(points[i] - points[j]) < 1e-9:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return Placement(quotient, full, seed)
    raise RuntimeError(f"no injective symmetric placement after {max_attempts} attempts")


def build_rigidity_matrix(cov: CoveringGraph, placement: Placement) -> RigidityMatrix:
    """One row per covering edge {x, y}: (p_x - p_y) in x's columns and the
    negative in y's."""
    columns = tuple((v, c) for v in cov.vertices for c in (0, 1))
    col_index = {v: 2 * i for i, v in enumerate(cov.vertices)}
    rows = tuple(sorted(cov.edges, key=lambda e: tuple(sorted(str(x) for x in e))))
    m = np.zeros((len(rows), 2 * cov.n_vertices))
    for r, e in enumerate(rows):
        x, y = sorted(e, key=str)
        d = placement.full[x] - placement.full[y]
        m[r, col_index[x] : col_index[x] + 2] = d
        m[r, col_index[y] : col_index[y] + 2] = -d
    return RigidityMatrix(m, rows, columns)


def symmetry_adapted_basis(
    g: GainGraph, t: int, cov: CoveringGraph | None = None
) -> np.ndarray:
    """Basis (2|cover V| x 2|V|) of velocity fields transforming by
    character t: the field is free on representatives (id, v) and propagated
    by u_{gamma v} = omega**(-t gamma) tau(gamma) u_v.

    For dihedral groups only t = 0 (fully symmetric fields) is available.
    """
    cov = expand(g) if cov is None else cov
    n_cols = 2 * g.n_vertices
    col_of = {v: 2 * i for i, v in enumerate(g.vertices)}
    row_of = {v: 2 * i for i, v in enumerate(cov.vertices)}
    if g.group.kind == DIHEDRAL:
        if t != 0:
            raise NotImplementedError(
                "character subspaces for dihedral groups are only available at t=0"
            )
        basis = np.zeros((2 * cov.n_vertices, n_cols))
        for x in cov.vertices:
            basis[row_of[x] : row_of[x] + 2, col_of[x.base] : col_of[x.base] + 2] = (
                x.gain.matrix()
            )
        return basis
    k = character_modulus(g.group)
    t = t % k
    basis = np.zeros((2 * cov.n_vertices, n_cols), dtype=complex)
    for x in cov.vertices:
        scale = character_value(x.gain, t).conjugate()
        basis[row_of[x] : row_of[x] + 2, col_of[x.base] : col_of[x.base] + 2] = (
            scale * x.gain.matrix()
        )
    return basis


def _numeric_rank(m: np.ndarray, rel_tol: float) -> int:
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0:
        return 0
    # Coordinates are O(1) by construction, so flooring the reference scale
    # at 1 keeps numerically-zero matrices (sigma_max ~ 1e-16) at rank 0.
    return int(np.sum(s > rel_tol * max(s[0], 1.0)))


def _seed_family(seed: int, n: int) -> tuple:
    return tuple(int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(n))


def motion_space(
    g: GainGraph,
    t: int,
    seed: int = 1,
    seeds: int = 3,
    rel_tol: float = DEFAULT_REL_TOL,
) -> MotionSpaceReport:
    """Kernel dimension of the rigidity matrix restricted to the character-t
    velocity subspace, checked across several seeded placements."""
    cov = expand(g)
    basis = symmetry_adapted_basis(g, t, cov)
    ranks = []
    used = _seed_family(seed, seeds)
    for s in used:
        placement = symmetric_generic_placement(g, s)
        r = build_rigidity_matrix(cov, placement)
        ranks.append(_numeric_rank(r.matrix @ basis, rel_tol))
    if len(set(ranks)) != 1:
        raise IndeterminateRankError(
            f"character {t}: ranks {ranks} disagree across seeds {used}"
        )
    rank = ranks[0]
    dim = basis.shape[1]
    return MotionSpaceReport(
        t=t,
        subspace_dim=dim,
        rank=rank,
        kernel_dim=dim - rank,
        trivial_dim=trivial_motion_dim(g.group, t),
        seeds=used,
    )


def character_rank_of_edges(
    g: GainGraph,
    edge_ids,
    t: int,
    seed: int = 1,
    seeds: int = 3,
    rel_tol: float = DEFAULT_REL_TOL,
) -> int:
    """Numeric matroid rank of a quotient edge subset in the character-t
    matroid: rank of the adapted rigidity matrix restricted to the rows of
    the subset's covering edges."""
    edge_ids = frozenset(edge_ids)
    cov = expand(g)
    basis = symmetry_adapted_basis(g, t, cov)
    ranks = []
    used = _seed_family(seed, seeds)
    for s in used:
        placement = symmetric_generic_placement(g, s)
        r = build_rigidity_matrix(cov, placement)
        keep = [i for i, e in enumerate(r.rows) if cov.quotient_edge[e] in edge_ids]
        ranks.append(_numeric_rank(r.matrix[keep] @ basis, rel_tol))
    if len(set(ranks)) != 1:
        raise IndeterminateRankError(f"subset ranks {ranks} disagree across seeds")
    return ranks[0]


def full_rank_report(
    g: GainGraph,
    seed: int = 1,
    seeds: int = 3,
    rel_tol: float = DEFAULT_REL_TOL,
) -> tuple:
    """(rank of the full rigidity matrix, number of covering vertices)."""
    cov = expand(g)
    ranks = []
    for s in _seed_family(seed, seeds):
        placement = symmetric_generic_placement(g, s)
        r = build_rigidity_matrix(cov, placement)
        ranks.append(_numeric_rank(r.matrix, rel_tol))
    if len(set(ranks)) != 1:
        raise IndeterminateRankError(f"full ranks {ranks} disagree")
    return ranks[0], cov.n_vertices


def is_rigid_numeric(
    g: GainGraph,
    seed: int = 1,
    seeds: int = 3,
    rel_tol: float = DEFAULT_REL_TOL,
    verify_characters: bool = True,
) -> bool:
    """Full-rank test: rigid iff rank R = 2|cover V| - 3.

    For cyclic-like groups the verdict is cross-checked against the
    conjunction of per-character verdicts (block diagonalization).
    """
    rank, n = full_rank_report(g, seed, seeds, rel_tol)
    if n < 2:
        raise ValueError("rigidity of a single point is undefined")
    rigid = rank == 2 * n - 3
    if verify_characters and g.group.kind in (CYCLIC, REFLECTION):
        k = character_modulus(g.group)
        reports = [motion_space(g, t, seed, seeds, rel_tol) for t in range(k)]
        by_characters = all(rep.is_rigid for rep in reports)
        total = sum(rep.rank for rep in reports)
        if total != rank:
            raise IndeterminateRankError(
                f"character ranks sum to {total}, full rank is {rank}"
            )
        if by_characters != rigid:
            raise IndeterminateRankError(
                "character verdicts disagree with the full-rank verdict"
            )
    return rigid
