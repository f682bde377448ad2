from __future__ import annotations

import itertools
from collections import deque

import numpy as np
import pytest

from symrigid.covering import CoveringGraph
from symrigid.fixtures import load_fixture
from symrigid.gain_graph import GainGraph, InvalidGainGraphError
from symrigid.group import GroupSpec


@pytest.fixture(scope="session")
def fig1b():
    return load_fixture("fig1b")


@pytest.fixture(scope="session")
def fig2a():
    return load_fixture("fig2a")


@pytest.fixture(scope="session")
def fig2b():
    return load_fixture("fig2b")


@pytest.fixture(scope="session")
def fig3():
    return load_fixture("fig3")


@pytest.fixture(scope="session")
def fig4():
    return load_fixture("fig4")


def random_gain_graph(
    rng: np.random.Generator,
    group: GroupSpec,
    max_vertices: int = 4,
    max_edges: int = 8,
) -> GainGraph:
    """Random valid gain graph with at least one edge."""
    while True:
        n = int(rng.integers(1, max_vertices + 1))
        vertices = [str(i) for i in range(1, n + 1)]
        elements = group.elements()
        edges: list = []
        target = int(rng.integers(1, max_edges + 1))
        for _ in range(60):
            if len(edges) >= target:
                break
            a = vertices[int(rng.integers(n))]
            b = vertices[int(rng.integers(n))]
            gain = elements[int(rng.integers(len(elements)))]
            if a == b and gain.is_identity:
                continue
            try:
                GainGraph(group, vertices, edges + [(a, b, gain)])
            except InvalidGainGraphError:
                continue
            edges.append((a, b, gain))
        if edges:
            return GainGraph(group, vertices, edges)


def connected_after(vertices, edges) -> bool:
    vertices = list(vertices)
    if len(vertices) <= 1:
        return True
    adj = {v: [] for v in vertices}
    for e in edges:
        x, y = tuple(e)
        adj[x].append(y)
        adj[y].append(x)
    seen = {vertices[0]}
    queue = deque([vertices[0]])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(vertices)


def brute_force_mixed(cov: CoveringGraph, n: int):
    """Literal search over all pairs (W, F) with 2|W| + |F| <= n - 1.

    Returns (is_n_mixed_connected, minimum cost over all disconnecting
    pairs or None).  Only for small covers.
    """
    vertices = sorted(cov.vertices, key=str)
    edges = sorted(cov.edges, key=lambda e: tuple(sorted(map(str, e))))
    best_cost = None
    for w_size in range(len(vertices) + 1):
        for W in itertools.combinations(vertices, w_size):
            w_set = set(W)
            kept_v = [v for v in vertices if v not in w_set]
            if len(kept_v) <= 1:
                continue
            kept_e = [e for e in edges if not (e & w_set)]
            for f_size in range(len(kept_e) + 1):
                if best_cost is not None and 2 * w_size + f_size >= best_cost:
                    break
                for F in itertools.combinations(kept_e, f_size):
                    remaining = [e for e in kept_e if e not in set(F)]
                    if not connected_after(kept_v, remaining):
                        cost = 2 * w_size + f_size
                        if best_cost is None or cost < best_cost:
                            best_cost = cost
                        break
    verdict = best_cost is None or best_cost > n - 1
    return verdict, best_cost


GROUP_POOL = [
    GroupSpec.cyclic(2),
    GroupSpec.cyclic(3),
    GroupSpec.cyclic(5),
    GroupSpec.reflection(),
]
