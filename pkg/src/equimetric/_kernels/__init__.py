"""Shortest-path kernels: compiled extension with pure-Python fallback.

The backend is selected once at import. Both backends are kept numerically
identical; `tests/test_kernels.py` asserts bitwise agreement when the
extension is available.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _spath_py

if os.environ.get("EQUIMETRIC_BACKEND") == "python":
    _impl = _spath_py
    BACKEND = "python"
else:
    try:
        from . import _spath_cy as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built; pure-Python fallback
        _impl = _spath_py
        BACKEND = "python"


def dijkstra(weights: np.ndarray, source: int) -> np.ndarray:
    w = np.ascontiguousarray(weights, dtype=np.float64)
    return _impl.dijkstra(w, source)


def apsp(weights: np.ndarray, workers: int = 1) -> np.ndarray:
    """All-pairs shortest paths over a dense weight matrix.

    Results are independent of ``workers``: each source row is computed in
    isolation, so the parallel schedule cannot change any value.
    """
    w = np.ascontiguousarray(weights, dtype=np.float64)
    n = w.shape[0]
    if workers <= 1 or n < 2:
        return np.asarray(_impl.apsp(w))
    out = np.empty((n, n), dtype=np.float64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for s, row in enumerate(pool.map(lambda i: _impl.dijkstra(w, i), range(n))):
            out[s] = row
    return out
