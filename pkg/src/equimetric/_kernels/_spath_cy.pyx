# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled shortest-path kernel.

Mirrors _spath_py exactly (same selection rule, same relaxation order, same
floating-point operations) so distance tables are bitwise identical across
backends.
"""

import numpy as np

cimport cython
from libc.math cimport INFINITY

BACKEND = "cython"


def dijkstra(double[:, :] weights, int source):
    cdef int n = weights.shape[0]
    out = np.full(n, INFINITY, dtype=np.float64)
    cdef double[:] dist = out
    done_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] done = done_arr
    cdef int u, v, it
    cdef double best, du, wv, cand
    dist[source] = 0.0
    for it in range(n):
        u = -1
        best = INFINITY
        for v in range(n):
            if not done[v] and dist[v] < best:
                best = dist[v]
                u = v
        if u < 0:
            break
        done[u] = True
        du = dist[u]
        for v in range(n):
            wv = weights[u, v]
            if wv != INFINITY and not done[v]:
                cand = du + wv
                if cand < dist[v]:
                    dist[v] = cand
    return out


def apsp(double[:, :] weights):
    cdef int n = weights.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    cdef int s
    for s in range(n):
        out[s] = dijkstra(weights, s)
    return out
