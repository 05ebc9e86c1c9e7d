"""Pure-Python shortest-path kernel (fallback for the compiled extension).

Dense Dijkstra without a heap: O(n^2) per source. Kept operation-for-operation
identical to the Cython version so both backends produce bitwise-equal
distance tables: the next vertex is the unvisited one with minimal tentative
distance, ties broken by smallest index, and relaxation sums are always
``dist[u] + w[u, v]`` in ascending v order.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

_INF = math.inf


def dijkstra(weights: np.ndarray, source: int) -> np.ndarray:
    """Single-source distances over a dense symmetric weight matrix.

    ``weights[u, v]`` is the edge weight, ``inf`` where there is no edge.
    """
    n = weights.shape[0]
    w = weights
    dist = [_INF] * n
    done = [False] * n
    dist[source] = 0.0
    for _ in range(n):
        u = -1
        best = _INF
        for v in range(n):
            if not done[v] and dist[v] < best:
                best = dist[v]
                u = v
        if u < 0:
            break
        done[u] = True
        row = w[u]
        du = dist[u]
        for v in range(n):
            wv = row[v]
            if wv != _INF and not done[v]:
                cand = du + wv
                if cand < dist[v]:
                    dist[v] = cand
    return np.array(dist, dtype=np.float64)


def apsp(weights: np.ndarray) -> np.ndarray:
    """All-pairs shortest paths; row i is dijkstra(weights, i)."""
    n = weights.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    for s in range(n):
        out[s] = dijkstra(weights, s)
    return out
