"""Channels: the grid-like box structure certifying short s-t paths.

For a query gap w > r the segment is discretized into boxes of size
l x h x ... x h (l = w/(4K+1)) in local coordinates; a jump advances the
first coordinate by 2 and every other coordinate by exactly +-1. When
h <= (1/8) sqrt(7/(d-1)) r, points in jump-adjacent boxes are always within
distance r, so a chain of occupied boxes from R(0,...,0) to R(4K,0,...,0)
certifies an s-t path of length at most w sqrt(1 + 40^2 (d-1) (h/r)^2).

For d = 2 the reachable boxes biject onto a (K+1) x (K+1) directed grid
(up/right moves); to_grid() realizes that mapping.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .geometry import Instance, LocalFrame, build_frame, euclid_dist
from .percolation import GridInstance
from .schedule import channel_discretization, h_limit


def max_h(d: int, r: float) -> float:
    """Largest admissible box height: (1/8) sqrt(7/(d-1)) r."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return h_limit(d, r)


@dataclass(frozen=True)
class ChannelSpec:
    d: int
    r: float
    w: float
    h: float
    K: int
    l: float
    frame: LocalFrame

    def __post_init__(self):
        if self.h > max_h(self.d, self.r) * (1.0 + 1e-12):
            raise ValueError(f"h={self.h} exceeds the jump-safe limit "
                             f"{max_h(self.d, self.r)}")


def make_spec(s, t, r: float, h: float) -> ChannelSpec:
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    w = euclid_dist(s, t)
    if not w > r:
        raise ValueError(f"channel requires w > r, got w={w}, r={r}")
    K, l = channel_discretization(w, r)
    return ChannelSpec(d=s.shape[0], r=float(r), w=w, h=float(h), K=K, l=l,
                       frame=build_frame(s, t))


def box_of_point(spec: ChannelSpec, p_local) -> tuple:
    """Half-open box assignment: z0 = floor(x0/l), z_i = floor(x_i/h + 1/2).

    Exception: x0 at (or within 1e-9 relative of) w itself maps to z0 = 4K,
    so the t anchor lands in R(4K, 0, ..., 0) as the closed-box convention
    demands.
    """
    p = np.asarray(p_local, dtype=np.float64)
    z0 = int(math.floor(p[0] / spec.l))
    if z0 > 4 * spec.K and p[0] <= spec.w * (1.0 + 1e-9):
        z0 = 4 * spec.K
    rest = (int(math.floor(p[i] / spec.h + 0.5)) for i in range(1, spec.d))
    return (z0, *rest)


def is_reachable_box(spec: ChannelSpec, b: tuple) -> bool:
    """True iff some jump sequence R(0,..,0) -> R(4K,0,..,0) can visit b:
    z0 = 2k with 0 <= k <= 2K, |z_i| <= min(k, 2K-k), z_i = k (mod 2)."""
    z0 = b[0]
    if z0 % 2 != 0:
        return False
    k = z0 // 2
    if not (0 <= k <= 2 * spec.K):
        return False
    lim = min(k, 2 * spec.K - k)
    for zi in b[1:]:
        if abs(zi) > lim or (zi - k) % 2 != 0:
            return False
    return True


def reachable_boxes(spec: ChannelSpec) -> list[tuple]:
    """All boxes satisfying is_reachable_box, layer by layer. For d=2 there
    are exactly (K+1)^2 of them (they biject onto the grid cells)."""
    out = []
    for k in range(0, 2 * spec.K + 1):
        lim = min(k, 2 * spec.K - k)
        lo = -lim if (-lim - k) % 2 == 0 else -lim + 1
        ranges = [range(lo, lim + 1, 2)] * (spec.d - 1)
        for rest in itertools.product(*ranges):
            out.append((2 * k, *rest))
    return out


def can_jump(a: tuple, b: tuple) -> bool:
    """Jump: first coordinate +2, every other coordinate exactly +-1."""
    if len(a) != len(b):
        return False
    if b[0] != a[0] + 2:
        return False
    return all(abs(b[i] - a[i]) == 1 for i in range(1, len(a)))


@dataclass(frozen=True)
class ChannelOccupancy:
    spec: ChannelSpec
    occupied: frozenset

    def to_json(self) -> str:
        return json.dumps(sorted(list(z) for z in self.occupied))


def occupancy(instance: Instance, s, t, h: float) -> ChannelOccupancy:
    """Reachable boxes holding at least one instance point (one vectorized
    pass: local transform, box assignment, reachability filter)."""
    spec = make_spec(s, t, instance.r, h)
    local = spec.frame.to_local(instance.points)
    z0 = np.floor(local[:, 0] / spec.l).astype(np.int64)
    at_t = (z0 > 4 * spec.K) & (local[:, 0] <= spec.w * (1.0 + 1e-9))
    z0[at_t] = 4 * spec.K
    zi = np.floor(local[:, 1:] / spec.h + 0.5).astype(np.int64)
    k = z0 >> 1
    lim = np.minimum(k, 2 * spec.K - k)
    ok = (z0 % 2 == 0) & (k >= 0) & (k <= 2 * spec.K)
    ok &= np.all(np.abs(zi) <= lim[:, None], axis=1)
    ok &= np.all((zi - k[:, None]) % 2 == 0, axis=1)
    boxes = frozenset(
        (int(a), *(int(v) for v in row))
        for a, row in zip(z0[ok], zi[ok])
    )
    return ChannelOccupancy(spec=spec, occupied=boxes)


def channel_path_exists(occ: ChannelOccupancy) -> bool:
    """Layered DP over k = 0..2K: can jumps through occupied boxes link
    R(0,...,0) to R(4K,0,...,0)?"""
    spec = occ.spec
    d = spec.d
    origin = (0,) * d
    target = (4 * spec.K, *(0,) * (d - 1))
    if origin not in occ.occupied or target not in occ.occupied:
        return False
    layer = {origin[1:]}
    steps = list(itertools.product((-1, 1), repeat=d - 1))
    for k in range(1, 2 * spec.K + 1):
        z0 = 2 * k
        nxt = set()
        for z in layer:
            for st in steps:
                cand = tuple(z[i] + st[i] for i in range(d - 1))
                if (z0, *cand) in occ.occupied:
                    nxt.add(cand)
        if not nxt:
            return False
        layer = nxt
    return (0,) * (d - 1) in layer


def certified_length(w: float, d: int, h: float, r: float) -> float:
    """Path-length certificate w sqrt(1 + 40^2 (d-1) (h/r)^2)."""
    return w * math.sqrt(1.0 + 1600.0 * (d - 1) * (h / r) ** 2)


def length_certificate(spec: ChannelSpec) -> float:
    """If a channel path exists, the graph distance s-t is at most this."""
    return certified_length(spec.w, spec.d, spec.h, spec.r)


def to_grid(occ: ChannelOccupancy) -> GridInstance:
    """d=2 only: box R(x, y) -> grid cell (x/4 - y/2 + 1, x/4 + y/2 + 1) on a
    (K+1)-per-side directed grid; reachable boxes biject onto the cells."""
    spec = occ.spec
    if spec.d != 2:
        raise ValueError(f"grid mapping is defined for d=2, got d={spec.d}")
    n = spec.K + 1
    on = np.zeros((n, n), dtype=bool)
    for (z0, z1) in occ.occupied:
        x = (z0 - 2 * z1) // 4 + 1
        y = (z0 + 2 * z1) // 4 + 1
        on[x - 1, y - 1] = True
    return GridInstance(on=on)
