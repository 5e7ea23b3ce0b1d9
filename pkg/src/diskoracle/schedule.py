"""Per-query constants and the growing-box schedule.

Given an instance (n, d, r) and a query gap w = ||t - s|| > r, the schedule
fixes the channel discretization (K, l), the constant c', the base height h0
with h0^(d-1) = c'/(n l), and the number of stages i_max. Stage i searches
the local-frame bounding box of the ellipsoid {x : |x-s| + |x-t| <= W_ub(i)}
where

    W_ub(i) = w * sqrt(1 + 40^2 (d-1) (c' i / (n l r^(d-1)))^(2/(d-1)))

In paper mode c' is the minimal constant making the channel-emptiness chain
decay like e^(-c' i); those constants are so conservative that i_max is 0
unless n r^d is in the hundreds, so the practical mode replaces c' by a
user kappa (default 1). Correctness never depends on the mode: the oracle
falls back to a full Dijkstra when every stage rejects.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .cells import Box
from .geometry import LocalFrame

# Contour-counting constants of the directed-grid bound: the no-path
# probability is at most 288*sqrt(q) = sqrt(C_GRID * q) for q < Q0.
C_GRID = (32 * 9) ** 2          # 82944
Q0 = 1.0 / (2 ** 10 * 3 ** 4)   # 1/82944


@dataclass(frozen=True)
class OracleParams:
    """Oracle tuning: 'paper' uses the conservative constants, 'practical'
    replaces c' by kappa."""

    mode: str = "practical"
    kappa: float = 1.0

    def __post_init__(self):
        if self.mode not in ("paper", "practical"):
            raise ValueError(f"mode must be 'paper' or 'practical', got {self.mode!r}")
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")

    @property
    def c(self) -> float:
        return float(C_GRID)

    @property
    def q0(self) -> float:
        return Q0


def h_limit(d: int, r: float) -> float:
    """Largest box height keeping jumps within the connectivity radius:
    (1/8) sqrt(7/(d-1)) r."""
    return 0.125 * math.sqrt(7.0 / (d - 1)) * r


def channel_discretization(w: float, r: float) -> tuple[int, float]:
    """Smallest K with l = w/(4K+1) <= r/4; guarantees r/20 < l <= r/4."""
    if not (w > r > 0.0):
        raise ValueError(f"requires w > r > 0, got w={w}, r={r}")
    k = max(1, math.ceil((4.0 * w / r - 1.0) / 4.0))
    while k > 1 and w / (4 * (k - 1) + 1) <= r / 4.0:
        k -= 1
    while w / (4 * k + 1) > r / 4.0:
        k += 1
    return k, w / (4 * k + 1)


def c_prime(d: int, params: OracleParams) -> float:
    """Minimal c' with max(ln(2/q0), ln c + i 2^(3-d)) <= c' i for all i >= 1
    (both branches peak at i = 1); kappa in practical mode."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if params.mode == "practical":
        return float(params.kappa)
    return max(math.log(2.0 / Q0), math.log(C_GRID) + 2.0 ** (3 - d))


@dataclass(frozen=True)
class QuerySchedule:
    n: int
    d: int
    r: float
    w: float
    K: int
    l: float
    c_prime: float
    h0: float
    i_max: int

    def h(self, i: int) -> float:
        """Box height at stage i (no range check; i_max+1 probes allowed)."""
        return self.h0 * i ** (1.0 / (self.d - 1))

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n, "d": self.d, "r": self.r, "w": self.w,
            "K": self.K, "l": self.l, "c_prime": self.c_prime,
            "h0": self.h0, "i_max": self.i_max,
        })


def make_schedule(n: int, d: int, r: float, w: float,
                  params: OracleParams = OracleParams()) -> QuerySchedule:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    K, l = channel_discretization(w, r)
    cp = c_prime(d, params)
    h0 = (cp / (n * l)) ** (1.0 / (d - 1))
    hmax = h_limit(d, r)
    i_max = int(math.floor((hmax ** (d - 1)) * n * l / cp))
    # Guard the floor against float rounding: h(i_max) must satisfy the
    # bound and h(i_max + 1) must violate it.
    sched = QuerySchedule(n=n, d=d, r=float(r), w=float(w), K=K, l=l,
                          c_prime=cp, h0=h0, i_max=i_max)
    while sched.i_max > 0 and sched.h(sched.i_max) > hmax:
        sched = QuerySchedule(n=n, d=d, r=float(r), w=float(w), K=K, l=l,
                              c_prime=cp, h0=h0, i_max=sched.i_max - 1)
    while sched.h(sched.i_max + 1) <= hmax:
        sched = QuerySchedule(n=n, d=d, r=float(r), w=float(w), K=K, l=l,
                              c_prime=cp, h0=h0, i_max=sched.i_max + 1)
    return sched


def _check_stage(schedule: QuerySchedule, i: int) -> None:
    if not (1 <= i <= schedule.i_max):
        raise ValueError(f"stage {i} outside 1..{schedule.i_max}")


def w_ub(schedule: QuerySchedule, i: int) -> float:
    """Stage-i path-length budget (explicit closed form)."""
    _check_stage(schedule, i)
    s = schedule
    ratio = (s.c_prime * i / (s.n * s.l * s.r ** (s.d - 1))) ** (2.0 / (s.d - 1))
    return s.w * math.sqrt(1.0 + 1600.0 * (s.d - 1) * ratio)


def w_ub_from_h(schedule: QuerySchedule, i: int) -> float:
    """Same budget through the h_i form; independent code path for checks."""
    s = schedule
    hi = s.h(i)
    return s.w * math.sqrt(1.0 + 1600.0 * (s.d - 1) * (hi / s.r) ** 2)


def bounding_box(schedule: QuerySchedule, frame: LocalFrame, i: int) -> Box:
    """Local-frame box [-(W-w)/2, (W+w)/2] x [-R, R]^(d-1) with W = W_ub(i)
    and R = sqrt(W^2 - w^2)/2; contains every point x with
    ||x-s|| + ||x-t|| <= W."""
    _check_stage(schedule, i)
    if frame.d != schedule.d:
        raise ValueError("frame dimension does not match the schedule")
    W = w_ub(schedule, i)
    w = schedule.w
    R = 0.5 * math.sqrt(max(W * W - w * w, 0.0))
    lo = np.full(schedule.d, -R)
    hi = np.full(schedule.d, R)
    lo[0] = -(W - w) / 2.0
    hi[0] = (W + w) / 2.0
    return Box(frame=frame, lo=lo, hi=hi)


def stage_empty_box_exponent(schedule: QuerySchedule, i: int) -> float:
    """n * l * h_i^(d-1); equals c' * i identically, so the per-box empty
    probability bound exp(-n l h_i^(d-1)) decays like exp(-c' i)."""
    s = schedule
    return s.n * s.l * s.h(i) ** (s.d - 1)
