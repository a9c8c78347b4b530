"""Graph builders for experiments and tests.

Fixed shapes (star, path, clique, bridged clique pair) plus two random
families: connected Erdos-Renyi style graphs (random spanning tree plus
extra edges) and preferential attachment. All random builders take an
explicit ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random

from .graph import Graph, from_edges


def star(leaves: int) -> Graph:
    """Node 0 at the center, ids 1..leaves around it."""
    return from_edges([(0, i, 1.0) for i in range(1, leaves + 1)], directed=False)


def path_graph(n: int) -> Graph:
    return from_edges([(i, i + 1, 1.0) for i in range(n - 1)], directed=False)


def complete_graph(n: int) -> Graph:
    edges = [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)]
    return from_edges(edges, directed=False)


def two_cliques(clique: int, blob: int = 0, rng: random.Random | None = None) -> Graph:
    """Two cliques of size ``clique`` joined by a single bridge edge.

    Clique A is ids 0..clique-1, clique B the next ``clique`` ids, with the
    bridge between the last node of A and the first of B. With ``blob`` > 0 a
    connected random appendage of that many extra nodes hangs off the last
    node of clique B, which stretches the graph without changing the
    neighborhood of a seed in clique A.
    """
    edges = []
    for base in (0, clique):
        for i in range(clique):
            for j in range(i + 1, clique):
                edges.append((base + i, base + j, 1.0))
    edges.append((clique - 1, clique, 1.0))
    n = 2 * clique
    if blob > 0:
        if rng is None:
            rng = random.Random(0)
        first = n
        for i in range(first, first + blob):
            anchor = n - 1 if i == first else rng.randrange(first, i)
            edges.append((anchor, i, 1.0))
        n += blob
        extra = blob // 2
        for _ in range(extra):
            u = rng.randrange(first, n)
            v = rng.randrange(first, n)
            if u != v and not _has_edge(edges, u, v):
                edges.append((min(u, v), max(u, v), 1.0))
    return from_edges(edges, directed=False)


def _has_edge(edges: list[tuple[int, int, float]], u: int, v: int) -> bool:
    return (u, v, 1.0) in edges or (v, u, 1.0) in edges


def erdos_renyi_connected(n: int, avg_degree: float, rng: random.Random) -> Graph:
    """Connected random graph with roughly ``avg_degree`` mean degree.

    A uniform random attachment tree guarantees connectivity; extra edges are
    then sampled uniformly over non-adjacent pairs until the edge budget
    n * avg_degree / 2 is met (or no progress can be made).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    edges = []
    present = set()

    def add(u: int, v: int) -> bool:
        if u == v:
            return False
        key = (min(u, v), max(u, v))
        if key in present:
            return False
        present.add(key)
        edges.append((key[0], key[1], 1.0))
        return True

    for i in range(1, n):
        add(rng.randrange(i), i)
    target = max(n - 1, round(n * avg_degree / 2))
    attempts = 0
    while len(edges) < target and attempts < 20 * target:
        add(rng.randrange(n), rng.randrange(n))
        attempts += 1
    return from_edges(edges, directed=False)


def preferential_attachment(n: int, m: int, rng: random.Random) -> Graph:
    """Growing graph where each new node links to ``m`` degree-biased picks."""
    if n < m + 1:
        raise ValueError(f"need n > m, got n={n} m={m}")
    edges = [(i, j, 1.0) for i in range(m + 1) for j in range(i + 1, m + 1)]
    # One list entry per edge endpoint; sampling it is degree-biased.
    endpoints = [i for i in range(m + 1) for _ in range(m)]
    for v in range(m + 1, n):
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(rng.choice(endpoints))
        for u in chosen:
            edges.append((u, v, 1.0))
            endpoints.extend((u, v))
    return from_edges(edges, directed=False)
