"""Verification of lifted metrics: axioms, invariance, ball inclusions,
and quotient consistency.

Every pass/fail check is a finite exhaustive computation. Epsilon/delta
statements quantified over (0, inf) are decided on the grid of realized
values of rho, d, d_G, d_O plus midpoints: over a finite point set, ball
contents (and hence inclusion truth) only change at realized values.
"""

from __future__ import annotations

import numpy as np

from .gspace import SampledGSpace
from .lift import LiftedMetric
from .orbital import GroupMetric, OrbitalMetric
from .quotient import Quotient
from .report import ADVISORY, FAIL, PASS, Report
from .slices import SliceFamily, subslice, value_grid


def _metric_axiom_violations(table: np.ndarray, tol: float):
    """Violations of the metric axioms and the worst residual, collected
    rather than raised so they can be reported with witnesses."""
    n = table.shape[0]
    v = []
    resid = 0.0
    # infinities are legitimate (extended metric on a disconnected lift);
    # inf - inf comparisons below evaluate to nan, which never exceeds tol
    np_err = np.seterr(invalid="ignore")
    for i in range(n):
        if abs(table[i, i]) > tol:
            v.append(("nonzero_diagonal", i))
            resid = max(resid, abs(float(table[i, i])))
    for i in range(n):
        for j in range(i + 1, n):
            if table[i, j] < -tol:
                v.append(("negative", i, j))
            if abs(table[i, j] - table[j, i]) > tol:
                v.append(("asymmetric", i, j))
                resid = max(resid, abs(float(table[i, j] - table[j, i])))
            if -tol <= table[i, j] <= tol:
                v.append(("zero_between_distinct", i, j))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                gap = table[i, j] - (table[i, k] + table[k, j])
                if gap > tol:
                    v.append(("triangle", i, j, k))
                    resid = max(resid, float(gap))
    np.seterr(**np_err)
    return v, resid


def verify_lifted_metric(gspace: SampledGSpace, quotient: Quotient,
                         lifted: LiftedMetric, tol: float = 1e-9,
                         invariance_tol: float = 1e-12, region=None) -> Report:
    """All checks are exhaustive. ``region`` (a set of point indices, for
    truncated partial-action samples) restricts the pass/fail invariance
    check to quadruples inside it; pairs touching the excluded boundary band
    are reported as a separate advisory residual."""
    rep = Report()
    rho = lifted.rho
    n = gspace.n_points
    d = quotient.d
    p = quotient.orbit_of

    off = [(i, j) for i in range(n) for j in range(i + 1, n)]
    any_finite = any(np.isfinite(rho[i, j]) for i, j in off)
    if not any_finite:
        for name in ("metric_axioms", "g_invariance", "lower_bound_quotient",
                     "cover_local_isometry", "nearest_neighbor_compatibility"):
            rep.add(name, ADVISORY, [("no finite off-diagonal distance",)])
        rep.add("lift_connected", FAIL, [tuple(c[0] for c in lifted.components)])
        return rep

    v, resid = _metric_axiom_violations(rho, tol)
    rep.add("metric_axioms", FAIL if v else PASS, v, resid)

    # invariance wherever both endpoints translate; a finite/infinite
    # mismatch is itself a violation
    inside = set(range(n)) if region is None else set(region)
    v = []
    resid = 0.0
    boundary_resid = 0.0
    for g in range(gspace.group.order):
        m = gspace.act[g]
        for x in range(n):
            gx = m.get(x)
            if gx is None:
                continue
            for y in range(x + 1, n):
                gy = m.get(y)
                if gy is None:
                    continue
                a, b = rho[x, y], rho[gx, gy]
                if np.isinf(a) and np.isinf(b):
                    continue
                gap = abs(float(a) - float(b)) if np.isfinite(a) and np.isfinite(b) else float("inf")
                if {x, y, gx, gy} <= inside:
                    resid = max(resid, gap)
                    if gap > invariance_tol:
                        v.append((g, x, y))
                else:
                    boundary_resid = max(boundary_resid, gap)
    rep.add("g_invariance", FAIL if v else PASS, v, resid)
    if region is not None:
        rep.add("g_invariance_boundary_band", ADVISORY, [], boundary_resid)

    v = []
    resid = 0.0
    for i, j in off:
        gap = float(d[p[i], p[j]]) - float(rho[i, j])
        if gap > resid:
            resid = gap
        if gap > tol:
            v.append((i, j))
    rep.add("lower_bound_quotient", FAIL if v else PASS, v, max(resid, 0.0))

    if lifted.mode == "cover":
        v = []
        resid = 0.0
        for s in lifted.graph.small_sets:
            pts = sorted(s)
            for a, u in enumerate(pts):
                for w in pts[a + 1 :]:
                    gap = abs(float(rho[u, w]) - float(d[p[u], p[w]]))
                    resid = max(resid, gap)
                    if gap > tol:
                        v.append((u, w))
        rep.add("cover_local_isometry", FAIL if v else PASS, v, resid)

    # topology proxy: each point's rho-nearest neighbor should be adjacent
    # in the sampling graph or lie on the same orbit (advisory)
    v = []
    for x in range(n):
        cands = [(float(rho[x, y]), y) for y in range(n) if y != x and np.isfinite(rho[x, y])]
        if not cands:
            continue
        best = min(c[0] for c in cands)
        nearest = [y for val, y in cands if val <= best + tol]
        ok = any(
            (min(x, y), max(x, y)) in gspace.space.edges or p[x] == p[y]
            for y in nearest
        )
        if not ok:
            v.append((x, nearest[0]))
    rep.add("nearest_neighbor_compatibility", ADVISORY, v)

    if not lifted.connected:
        rep.add("lift_connected", FAIL, [tuple(c[0] for c in lifted.components)])

    return rep


def _inclusion_grid(quotient, d_G, d_O, lifted):
    vals = list(np.asarray(quotient.d).ravel()) + list(d_G.table.ravel())
    if d_O is not None:
        vals += [v for v in d_O.values.ravel() if not np.isnan(v)]
    vals += [v for v in lifted.rho.ravel() if np.isfinite(v)]
    grid = value_grid(vals)
    top = (grid[-1] if grid else 0.0) + 1.0
    return grid + [top]


def motion_set(gspace: SampledGSpace, quotient: Quotient, family: SliceFamily,
               d_G: GroupMetric, x: int, delta: float, slice_radius: float = None) -> frozenset:
    """B(delta) . S_x(slice_radius): every point reachable by moving a slice
    neighbor of x with a group element delta-close to the identity."""
    if slice_radius is None:
        slice_radius = delta
    base = subslice(family, x, quotient, eps=slice_radius)
    out = set()
    for g in d_G.ball(delta):
        for y in base:
            gy = gspace.apply(g, y)
            if gy is not None:
                out.add(gy)
    return frozenset(out)


def rho_ball(lifted: LiftedMetric, x: int, eps: float) -> frozenset:
    return frozenset(
        y for y in range(lifted.rho.shape[0]) if lifted.rho[x, y] < eps
    )


def motion_inside_rho_ball(gspace, quotient, family, d_G, lifted,
                           x: int, delta: float, eps: float) -> bool:
    """Does B(delta) . S_x(delta) fit inside the open rho-ball of radius eps?"""
    return motion_set(gspace, quotient, family, d_G, x, delta) <= rho_ball(lifted, x, eps)


def rho_ball_inside_motion(gspace, quotient, family, d_G, lifted,
                           x: int, delta: float, eps: float) -> bool:
    """Is the open rho-ball of radius eps contained in B(delta) . S_x(eps)?"""
    return rho_ball(lifted, x, eps) <= motion_set(gspace, quotient, family, d_G, x, delta, slice_radius=eps)


def verify_ball_inclusions(gspace: SampledGSpace, quotient: Quotient,
                           family: SliceFamily, d_G: GroupMetric,
                           d_O: OrbitalMetric, lifted: LiftedMetric) -> Report:
    """Existence searches for the two ball-inclusion statements behind
    topology compatibility: small joint motion stays in a small rho-ball,
    and every small rho-ball is reached by small joint motion."""
    rep = Report()
    n = gspace.n_points
    grid = _inclusion_grid(quotient, d_G, d_O, lifted)

    fails, wits = [], []
    for x in range(n):
        for eps in grid:
            found = None
            for delta in grid:
                if motion_inside_rho_ball(gspace, quotient, family, d_G, lifted, x, delta, eps):
                    found = delta
                    break
            if found is None:
                fails.append((x, eps))
            else:
                wits.append((x, eps, found))
    rep.add("motion_inside_rho_ball", FAIL if fails else PASS, fails or wits[:3])

    fails, wits = [], []
    for x in range(n):
        for delta in grid:
            found = None
            for eps in grid:
                if rho_ball_inside_motion(gspace, quotient, family, d_G, lifted, x, delta, eps):
                    found = eps
                    break
            if found is None:
                fails.append((x, delta))
            else:
                wits.append((x, delta, found))
    rep.add("rho_ball_inside_motion", FAIL if fails else PASS, fails or wits[:3])

    return rep


def quotient_consistency(gspace: SampledGSpace, quotient: Quotient,
                         lifted: LiftedMetric, tol: float = 1e-9) -> Report:
    """Push rho back down: d'(P, Q) = min rho over lifts. d' must be a metric
    whenever rho is invariant; its deviation from d is reported as an
    advisory residual (equality is not claimed in general)."""
    rep = Report()
    k = quotient.n_orbits
    if not np.isfinite(lifted.rho).all():
        rep.add("pushforward_is_metric", ADVISORY, [("lift not finite everywhere",)])
        rep.add("pushforward_matches_quotient", ADVISORY, [("lift not finite everywhere",)])
        return rep

    dp = np.zeros((k, k))
    for a in range(k):
        for b in range(a + 1, k):
            best = min(
                float(lifted.rho[x, y])
                for x in quotient.orbit_members[a]
                for y in quotient.orbit_members[b]
            )
            dp[a, b] = dp[b, a] = best

    v, resid = _metric_axiom_violations(dp, tol)
    rep.add("pushforward_is_metric", FAIL if v else PASS, v, resid)

    resid = float(np.max(np.abs(dp - quotient.d))) if k else 0.0
    wit = []
    if k and resid > tol:
        a, b = map(int, np.unravel_index(np.argmax(np.abs(dp - quotient.d)), dp.shape))
        wit = [(a, b)]
    rep.add("pushforward_matches_quotient", ADVISORY, wit, resid)

    return rep
