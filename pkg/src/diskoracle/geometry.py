"""Points, random instances, file IO and the s-t local coordinate frame.

A weighted unit-disk graph is never materialized: an instance is just the
dimension d, the connectivity radius r and an (n, d) array of points in the
unit cube. Two points are adjacent iff their Euclidean distance is <= r, the
edge weight being that distance.

Reproducibility: every random draw in the package goes through
``generator(seed, stream)`` which derives an independent PCG64 stream from
``SeedSequence([seed, stream, *extra])``. Stream ids are the STREAM_*
constants below, so instance generation and Monte-Carlo sampling never share
a stream even under the same user seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Stream ids for generator(); keep stable, they are part of the repro contract.
STREAM_INSTANCE = 0
STREAM_PERCOLATION = 1
STREAM_BENCH = 2
STREAM_VERIFY = 3


def generator(seed: int, stream: int, *extra: int) -> np.random.Generator:
    """Independent, reproducible PCG64 generator for (seed, stream, *extra)."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(stream), *map(int, extra)]))


class DegenerateFrameError(ValueError):
    """Raised when a local frame is requested for coincident s and t."""


def euclid_dist(p, q) -> float:
    """Euclidean distance between two points of equal dimension."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"dimension mismatch: {p.shape} vs {q.shape}")
    return float(np.sqrt(np.sum((p - q) ** 2)))


@dataclass(frozen=True)
class Instance:
    """n points in [0,1]^d plus the connectivity radius r.

    ``seed`` records generation provenance (0 when loaded from a file that
    did not come out of gen_instance).
    """

    d: int
    r: float
    points: np.ndarray  # (n, d) float64, C-contiguous
    seed: int = 0

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if not (0.0 < self.r < 1.0):
            raise ValueError(f"r must lie in (0, 1), got {self.r}")
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.float64))
        if pts.ndim != 2 or pts.shape[1] != self.d:
            raise ValueError(f"points must have shape (n, {self.d})")
        if pts.shape[0] > 0 and (pts.min() < 0.0 or pts.max() > 1.0):
            raise ValueError("points must lie in the unit cube")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def connectivity_threshold(self) -> float:
        """(log n / n)^(1/d); below this radius the graph is a.s. disconnected."""
        return (math.log(max(self.n, 2)) / max(self.n, 2)) ** (1.0 / self.d)


def gen_instance(n: int, d: int, r: float, seed: int) -> Instance:
    """n i.i.d. uniform points in [0,1]^d; bit-identical for equal arguments."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must lie in (0, 1), got {r}")
    rng = generator(seed, STREAM_INSTANCE)
    pts = rng.random((n, d))
    return Instance(d=d, r=float(r), points=pts, seed=int(seed))


def save_instance(instance: Instance, path) -> None:
    """Write the text format: header ``d r n seed``, then one point per line.

    Values use the shortest representation that parses back to the same
    float64 (at most 17 significant digits), so load_instance round-trips
    exactly.
    """
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{instance.d} {instance.r!r} {instance.n} {instance.seed}\n")
        for row in instance.points:
            fh.write(" ".join(repr(float(c)) for c in row) + "\n")


def load_instance(path) -> Instance:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 4:
            raise ValueError(f"bad header in {path!r}: expected 'd r n seed'")
        d, r, n, seed = int(header[0]), float(header[1]), int(header[2]), int(header[3])
        pts = np.loadtxt(fh, dtype=np.float64, ndmin=2)
    if pts.shape != (n, d):
        raise ValueError(f"expected {n} points of dimension {d}, got shape {pts.shape}")
    return Instance(d=d, r=r, points=pts, seed=seed)


@dataclass(frozen=True)
class LocalFrame:
    """Rigid transform putting s at the origin and t on the positive first axis.

    ``basis`` rows are the orthonormal direction vectors; row 0 is (t-s)/w.
    """

    origin: np.ndarray  # (d,)
    basis: np.ndarray   # (d, d), rows orthonormal
    w: float

    @property
    def d(self) -> int:
        return self.origin.shape[0]

    def to_local(self, p) -> np.ndarray:
        """Map one point (d,) or many (m, d) into frame coordinates."""
        p = np.asarray(p, dtype=np.float64)
        if p.shape[-1] != self.d:
            raise ValueError(f"dimension mismatch: point has {p.shape[-1]}, frame has {self.d}")
        return (p - self.origin) @ self.basis.T

    def from_local(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=np.float64)
        return p @ self.basis + self.origin


def build_frame(s, t) -> LocalFrame:
    """Orthonormal frame with first axis (t-s)/w.

    d=2 completes with the counter-clockwise perpendicular; d>=3 applies the
    Householder reflection that maps e0 onto the first axis to the remaining
    standard axes (deterministic, numerically stable).
    """
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    if s.shape != t.shape or s.ndim != 1:
        raise ValueError("s and t must be 1-d points of equal dimension")
    d = s.shape[0]
    diff = t - s
    w = float(np.sqrt(np.sum(diff * diff)))
    if w == 0.0:
        raise DegenerateFrameError("s == t: no direction to align the frame with")
    e0 = diff / w
    if d == 2:
        basis = np.array([[e0[0], e0[1]], [-e0[1], e0[0]]])
    else:
        # Householder H = I - 2 vv^T with v = e0 + sign*e_first (sign picked
        # against cancellation). H maps -sign*e_first onto e0, so its rows
        # are an orthonormal set whose row 0 is e0 up to the sign flip.
        sign = -1.0 if e0[0] < 0.0 else 1.0
        v = e0.copy()
        v[0] += sign
        v /= np.sqrt(np.sum(v * v))
        basis = np.eye(d) - 2.0 * np.outer(v, v)
        basis[0] = e0
    return LocalFrame(origin=s, basis=basis, w=w)


def to_local(frame: LocalFrame, p) -> np.ndarray:
    return frame.to_local(p)
