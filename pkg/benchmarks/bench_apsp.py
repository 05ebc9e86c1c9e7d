"""Benchmark: compiled vs pure-Python shortest-path kernel.

Usage: python3 benchmarks/bench_apsp.py [sizes ...]

Also asserts bitwise agreement between the two backends on every instance,
since the determinism guarantees of the library depend on it.
"""

import sys
import time

import numpy as np

from equimetric._kernels import _spath_py

try:
    from equimetric._kernels import _spath_cy
except ImportError:
    _spath_cy = None


def random_weights(rng, n, density=0.3):
    w = np.full((n, n), np.inf)
    np.fill_diagonal(w, 0.0)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                w[i, j] = w[j, i] = rng.uniform(0.1, 5.0)
    return w


def timed_apsp(module, w, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = np.array([module.dijkstra(w, s) for s in range(w.shape[0])])
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    sizes = [int(a) for a in sys.argv[1:]] or [25, 50, 100, 200]
    rng = np.random.default_rng(0)
    print(f"{'n':>6} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for n in sizes:
        w = random_weights(rng, n)
        t_py, r_py = timed_apsp(_spath_py, w)
        if _spath_cy is None:
            print(f"{n:>6} {t_py:>12.4f} {'-':>12} {'-':>8}")
            continue
        t_cy, r_cy = timed_apsp(_spath_cy, w)
        assert r_py.tobytes() == r_cy.tobytes(), "backends disagree bitwise"
        print(f"{n:>6} {t_py:>12.4f} {t_cy:>12.4f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
