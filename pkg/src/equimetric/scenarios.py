"""Built-in example spaces: deterministic constructions of small symmetric
samples with validated group actions.

circle(n, k)      n points on the unit circle, cyclic rotation group of
                  order k (k must divide n), arc-length metric.
reflection(m, h)  2m+1 points at spacing h on a line, order-2 negation.
dihedral(n)       n circle points under the full dihedral group (order 2n);
                  a single orbit, so slices degenerate to singletons.
disk(g)           odd g x g grid with the 90-degree rotation group, Euclidean
                  metric, 4-neighbor adjacency; the origin is a fixed point.
shift(m, h, N)    2m+1 line points at spacing h; integer shifts truncated to
                  |j| <= N act partially (points near the boundary leave the
                  sample). The carrier group is the cyclic group of order
                  4N+1 so that every defined product of defined shifts agrees
                  with the group multiplication: |j1|,|j2| <= N never wraps.
"""

from __future__ import annotations

import math

from .errors import ValidationError
from .gspace import SampledGSpace, bind_action, build_group, build_space, group_from_permutations


def _circle_space(n: int):
    step = 2.0 * math.pi / n
    metric = [[min(abs(i - j), n - abs(i - j)) * step for j in range(n)] for i in range(n)]
    edges = [(i, (i + 1) % n) for i in range(n)]
    labels = [f"{360.0 * i / n:g}deg" for i in range(n)]
    return build_space(metric, edges, labels)


def circle(n: int, k: int) -> SampledGSpace:
    if n < 3 or k < 1 or n % k != 0:
        raise ValidationError("InvalidParams", "circle requires n >= 3 and k dividing n", (n, k))
    space = _circle_space(n)
    shift_by = n // k
    rot = tuple((i + shift_by) % n for i in range(n))
    group, perms = group_from_permutations([rot])
    act = [{i: perm[i] for i in range(n)} for perm in perms]
    return bind_action(space, group, act)


def reflection(m: int, h: float) -> SampledGSpace:
    if m < 1 or h <= 0:
        raise ValidationError("InvalidParams", "reflection requires m >= 1 and positive spacing", (m, h))
    n = 2 * m + 1
    pos = [(i - m) * h for i in range(n)]
    metric = [[abs(a - b) for b in pos] for a in pos]
    edges = [(i, i + 1) for i in range(n - 1)]
    labels = [f"{p:g}" for p in pos]
    space = build_space(metric, edges, labels)
    neg = tuple(n - 1 - i for i in range(n))
    group, perms = group_from_permutations([neg])
    act = [{i: perm[i] for i in range(n)} for perm in perms]
    return bind_action(space, group, act)


def dihedral(n: int) -> SampledGSpace:
    if n < 3:
        raise ValidationError("InvalidParams", "dihedral requires n >= 3", n)
    space = _circle_space(n)
    rot = tuple((i + 1) % n for i in range(n))
    flip = tuple((n - i) % n for i in range(n))
    group, perms = group_from_permutations([rot, flip])
    act = [{i: perm[i] for i in range(n)} for perm in perms]
    return bind_action(space, group, act)


def disk(g: int) -> SampledGSpace:
    if g < 3 or g % 2 == 0:
        raise ValidationError("InvalidParams", "disk requires an odd grid side >= 3", g)
    c = g // 2
    coords = [(r - c, col - c) for r in range(g) for col in range(g)]
    index = {xy: i for i, xy in enumerate(coords)}
    n = g * g
    metric = [[math.hypot(a[0] - b[0], a[1] - b[1]) for b in coords] for a in coords]
    edges = []
    for i, (x, y) in enumerate(coords):
        for dx, dy in ((1, 0), (0, 1)):
            if (x + dx, y + dy) in index:
                edges.append((i, index[(x + dx, y + dy)]))
    labels = [f"({x},{y})" for x, y in coords]
    space = build_space(metric, edges, labels)
    rot = tuple(index[(-y, x)] for x, y in coords)
    group, perms = group_from_permutations([rot])
    act = [{i: perm[i] for i in range(n)} for perm in perms]
    return bind_action(space, group, act)


def shift(m: int, h: float, N: int) -> SampledGSpace:
    if m < 1 or h <= 0 or N < 1:
        raise ValidationError("InvalidParams", "shift requires m >= 1, positive spacing, N >= 1", (m, h, N))
    stride = round(1.0 / h)
    if stride < 1 or abs(stride * h - 1.0) > 1e-9:
        raise ValidationError("InvalidParams", "shift requires 1/h to be a positive integer", h)
    n = 2 * m + 1
    if N * stride >= n:
        raise ValidationError("InvalidParams", "largest shift leaves no point in the sample", (m, h, N))
    pos = [(i - m) * h for i in range(n)]
    metric = [[abs(a - b) for b in pos] for a in pos]
    edges = [(i, i + 1) for i in range(n - 1)]
    labels = [f"{p:g}" for p in pos]
    space = build_space(metric, edges, labels)

    order = 4 * N + 1
    mul = [[(a + b) % order for b in range(order)] for a in range(order)]
    group = build_group(mul, generators=[1 % order])
    act = []
    for g in range(order):
        j = g if g <= 2 * N else g - order
        if abs(j) <= N:
            act.append({i: i + j * stride for i in range(n) if 0 <= i + j * stride < n})
        else:
            act.append({})
    return bind_action(space, group, act)


def shift_acceptance_margin(h: float, N: int) -> float:
    """Positions within this distance of the sample boundary are excluded
    from shift-scenario invariance checks: truncation distorts shortest
    paths out to the reach of one maximal shift (N units), measurably —
    the invariance residual drops to exactly zero past this margin and
    stays as large as the group-metric scale inside it."""
    return N * h * round(1.0 / h)


def shift_acceptance_region(m: int, h: float, N: int) -> frozenset:
    """Point indices strictly farther than the acceptance margin from both
    sample boundaries."""
    margin = shift_acceptance_margin(h, N)
    n = 2 * m + 1
    lo, hi = -m * h, m * h
    return frozenset(
        i for i in range(n)
        if (i - m) * h - lo > margin and hi - (i - m) * h > margin
    )


_BUILDERS = {
    "circle": (circle, ("n", "k")),
    "reflection": (reflection, ("m", "h")),
    "dihedral": (dihedral, ("n",)),
    "disk": (disk, ("g",)),
    "shift": (shift, ("m", "h", "N")),
}


def scenario_names() -> tuple:
    return tuple(sorted(_BUILDERS))


def scenario_params(name: str) -> tuple:
    if name not in _BUILDERS:
        raise ValidationError("InvalidParams", f"unknown scenario {name!r}")
    return _BUILDERS[name][1]


def generate_scenario(name: str, params: dict) -> SampledGSpace:
    if name not in _BUILDERS:
        raise ValidationError("InvalidParams", f"unknown scenario {name!r}")
    fn, wanted = _BUILDERS[name]
    extra = sorted(set(params) - set(wanted))
    if extra:
        raise ValidationError("InvalidParams", f"unknown parameter {extra[0]!r} for scenario {name!r}")
    missing = [w for w in wanted if w not in params]
    if missing:
        raise ValidationError("InvalidParams", f"scenario {name!r} requires parameter {missing[0]!r}")
    return fn(**{w: params[w] for w in wanted})
