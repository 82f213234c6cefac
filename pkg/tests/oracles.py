"""Independent reference implementations the production code is checked against.

Everything here is deliberately naive pure Python (plus one dense linear
solve): different code paths from the package so agreement is meaningful.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

import numpy as np

from netmedian.graph import Graph


def adjacency_lists(g: Graph) -> list[list[int]]:
    return [[int(u) for u in g.neighbors(v)] for v in range(g.vertex_count)]


def bfs_distances(adj: list[list[int]], sources) -> list[int]:
    dist = [-1] * len(adj)
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def all_pairs_naive(g: Graph) -> list[list[int]]:
    adj = adjacency_lists(g)
    return [bfs_distances(adj, [s]) for s in range(g.vertex_count)]


def farness_naive(g: Graph, subset) -> int:
    return sum(bfs_distances(adjacency_lists(g), list(subset)))


def kmedian_naive(g: Graph, k: int):
    """Evaluate every k-subset from scratch with its own BFS.

    Returns (optimal_value, optimal_farness, optimal_sets, subset_count,
    mean_value) — the brute-force oracle for the incremental enumerator.
    """
    n = g.vertex_count
    adj = adjacency_lists(g)
    best_f = None
    best_sets: list[tuple[int, ...]] = []
    total = 0
    count = 0
    for subset in combinations(range(n), k):
        f = sum(bfs_distances(adj, list(subset)))
        total += f
        count += 1
        if best_f is None or f < best_f:
            best_f = f
            best_sets = [subset]
        elif f == best_f:
            best_sets.append(subset)
    return (
        best_f / (n - k),
        best_f,
        sorted(best_sets),
        count,
        total / count / (n - k),
    )


def core_numbers_naive(g: Graph) -> list[int]:
    """Core numbers straight from the definition: for each i, repeatedly strip
    vertices of degree < i and record the deepest level each vertex survives."""
    n = g.vertex_count
    adj = adjacency_lists(g)
    core = [0] * n
    max_deg = max(len(a) for a in adj)
    for i in range(1, max_deg + 1):
        alive = set(range(n))
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                if sum(1 for u in adj[v] if u in alive) < i:
                    alive.discard(v)
                    changed = True
        for v in alive:
            core[v] = i
        if not alive:
            break
    return core


def h_index_naive(g: Graph) -> list[int]:
    out = []
    for v in range(g.vertex_count):
        degrees = sorted((g.degree(int(u)) for u in g.neighbors(v)), reverse=True)
        h = 0
        for position, value in enumerate(degrees, start=1):
            if value >= position:
                h = position
            else:
                break
        out.append(h)
    return out


def pagerank_solve(g: Graph, damping: float = 0.85) -> np.ndarray:
    """Dense linear-system solution of the unnormalized PageRank fixed point."""
    n = g.vertex_count
    coefficients = np.eye(n)
    for v in range(n):
        for u in g.neighbors(v):
            coefficients[v, int(u)] -= damping / g.degree(int(u))
    return np.linalg.solve(coefficients, np.full(n, 1.0 - damping))
