"""Orbits, the projection onto the orbit space, and a metric on it."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ._kernels import apsp
from .errors import ValidationError
from .gspace import SampledGSpace, _check_metric_table


@dataclass(frozen=True)
class Quotient:
    n_orbits: int
    orbit_of: tuple  # point -> orbit index (the projection)
    representative: tuple  # orbit -> least point index in the orbit
    orbit_members: tuple  # orbit -> sorted tuple of points
    stabilizer_of: tuple  # point -> tuple of group element indices
    quotient_adjacency: frozenset  # edges on orbit indices, (a, b) with a < b
    d: Optional[np.ndarray] = None  # n_orbits x n_orbits metric table

    def project(self, x: int) -> int:
        return self.orbit_of[x]

    def dist(self, x: int, y: int) -> float:
        """Quotient distance between the orbits of two points."""
        return float(self.d[self.orbit_of[x], self.orbit_of[y]])

    def ball(self, orbit: int, radius: float) -> frozenset:
        """Open metric ball in the orbit space."""
        return frozenset(q for q in range(self.n_orbits) if self.d[orbit, q] < radius)

    def preimage(self, orbits) -> frozenset:
        wanted = set(orbits)
        return frozenset(x for x, q in enumerate(self.orbit_of) if q in wanted)


def compute_orbits(gspace: SampledGSpace) -> Quotient:
    """Orbit partition: x ~ y iff some chain of defined translations joins them.

    For total actions this is the usual group orbit; for partial actions it is
    the connected component of the translation relation (may be smaller than
    the ambient infinite-group orbit; scenario docs carry that caveat).
    """
    n = gspace.n_points
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra

    for g in range(gspace.group.order):
        for x, gx in gspace.act[g].items():
            union(x, gx)

    roots = sorted({find(x) for x in range(n)})
    orbit_index = {r: i for i, r in enumerate(roots)}
    orbit_of = tuple(orbit_index[find(x)] for x in range(n))
    members = [[] for _ in roots]
    for x in range(n):
        members[orbit_of[x]].append(x)
    members = tuple(tuple(m) for m in members)
    reps = tuple(m[0] for m in members)

    qadj = set()
    for a, b in gspace.space.edges:
        pa, pb = orbit_of[a], orbit_of[b]
        if pa != pb:
            qadj.add((min(pa, pb), max(pa, pb)))

    return Quotient(
        n_orbits=len(roots),
        orbit_of=orbit_of,
        representative=reps,
        orbit_members=members,
        stabilizer_of=gspace.stabilizers,
        quotient_adjacency=frozenset(qadj),
    )


def _min_over_lifts(gspace, members_p, members_q) -> float:
    rho0 = gspace.space.base_metric
    best = float("inf")
    for a in members_p:
        for b in members_q:
            v = rho0[a, b]
            if v < best:
                best = float(v)
    return best


def quotient_metric(
    gspace: SampledGSpace,
    orbits: Quotient,
    mode: str = "graph",
    table=None,
    tol: float = 1e-9,
    workers: int = 1,
) -> Quotient:
    """Attach a metric to the orbit space.

    graph: all-pairs shortest path over the quotient adjacency, edge weight
        min base distance over adjacent lifts.
    isometric: min base distance over all lift pairs; requires every total
        element to be a base-metric isometry.
    explicit: validate and adopt the given table.
    """
    n = orbits.n_orbits
    if mode == "explicit":
        d = np.asarray(table, dtype=np.float64)
        if d.shape != (n, n):
            raise ValidationError("NotAMetric", "explicit table has wrong shape")
        _check_metric_table(d, tol)
    elif mode == "isometric":
        rho0 = gspace.space.base_metric
        npts = gspace.n_points
        for g in gspace.total_elements():
            m = gspace.act[g]
            for a in range(npts):
                for b in range(npts):
                    if abs(rho0[m[a], m[b]] - rho0[a, b]) > tol:
                        raise ValidationError(
                            "NotIsometricAction", "total element is not a base-metric isometry", (g, a, b)
                        )
        d = np.zeros((n, n), dtype=np.float64)
        for p in range(n):
            for q in range(p + 1, n):
                v = _min_over_lifts(gspace, orbits.orbit_members[p], orbits.orbit_members[q])
                d[p, q] = d[q, p] = v
        _check_metric_table(d, tol)
    elif mode == "graph":
        w = np.full((n, n), np.inf, dtype=np.float64)
        np.fill_diagonal(w, 0.0)
        for p, q in sorted(orbits.quotient_adjacency):
            v = _min_over_lifts(gspace, orbits.orbit_members[p], orbits.orbit_members[q])
            w[p, q] = w[q, p] = v
        d = apsp(w, workers=workers)
        if np.isinf(d).any():
            p, q = map(int, np.argwhere(np.isinf(d))[0])
            raise ValidationError("DisconnectedQuotient", "quotient adjacency is not connected", (p, q))
        _check_metric_table(d, tol)
    else:
        raise ValidationError("InvalidParams", f"unknown quotient metric mode {mode!r}")

    d.setflags(write=False)
    return replace(orbits, d=d)
