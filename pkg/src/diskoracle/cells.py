"""Dynamic uniform-cell spatial index over the unit cube.

The index partitions [0,1]^d into k^d cells of side 1/k and assigns every
point to the cell given by the deterministic floor-with-clamp rule
``min(floor(coord * k), k - 1)`` per axis. It serves two jobs for the
distance oracle: collecting the vertex set of a rotated local-frame box
(conservative cell cover + exact per-axis filter), and staying cheap to
update when points are inserted or removed.

Mutations are O(1) amortized; queries run off a cube-sorted snapshot that is
rebuilt lazily (O(n)) after the first query following a mutation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import Instance, LocalFrame


def default_k(n: int, d: int) -> int:
    """floor(n^(1/d)), the paper-recommended cells-per-axis."""
    k = int(n ** (1.0 / d) + 1e-9)
    return max(k, 1)


def cell_of_coords(p, k: int) -> tuple:
    """Deterministic cell assignment: min(floor(coord*k), k-1) per axis."""
    p = np.asarray(p, dtype=np.float64)
    idx = np.minimum((p * k).astype(np.int64), k - 1)
    np.maximum(idx, 0, out=idx)
    return tuple(int(v) for v in idx)


def _flatten(cell: tuple, k: int) -> int:
    f = 0
    for v in cell:
        f = f * k + int(v)
    return f


def _unflatten(flat: int, k: int, d: int) -> tuple:
    out = []
    for _ in range(d):
        out.append(flat % k)
        flat //= k
    return tuple(reversed(out))


@dataclass(frozen=True)
class Box:
    """Axis-aligned box in the local coordinates of ``frame``."""

    frame: LocalFrame
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=np.float64)
        hi = np.asarray(self.hi, dtype=np.float64)
        if lo.shape != (self.frame.d,) or hi.shape != (self.frame.d,):
            raise ValueError("lo/hi must match the frame dimension")
        if np.any(lo > hi):
            raise ValueError("box requires lo <= hi per axis")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def d(self) -> int:
        return self.frame.d

    def contains_local(self, local: np.ndarray) -> np.ndarray:
        local = np.atleast_2d(local)
        return np.all((local >= self.lo) & (local <= self.hi), axis=1)

    def contains_global(self, p) -> bool:
        return bool(self.contains_local(self.frame.to_local(np.asarray(p)))[0])

    def covers_unit_cube(self) -> bool:
        """True iff the box provably contains [0,1]^d (corner check)."""
        corners = np.array(list(itertools.product((0.0, 1.0), repeat=self.d)))
        return bool(np.all(self.contains_local(self.frame.to_local(corners))))


@dataclass(frozen=True)
class CellSnapshot:
    """Frozen cube-sorted view of the live points, consumed by kernels."""

    k: int
    starts: np.ndarray   # (k^d + 1,)
    coords: np.ndarray   # (m, d) sorted by flat cell
    ids: np.ndarray      # (m,) point ids aligned with coords

    @property
    def d(self) -> int:
        return self.coords.shape[1]


class CellIndex:
    """k-per-axis uniform grid index; point ids are dense for the initial
    instance and keep growing for inserted points (never reused)."""

    def __init__(self, instance: Instance, k: int | None = None):
        if k is None:
            k = default_k(instance.n, instance.d)
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        self.k = int(k)
        self.d = instance.d
        self._base = instance.points
        self._base_alive = np.ones(instance.n, dtype=bool)
        self._extra_pts: list[np.ndarray] = []
        self._extra_alive: list[bool] = []
        self._buckets: dict[int, list[int]] | None = None
        self._snapshot: CellSnapshot | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n_base(self) -> int:
        return self._base.shape[0]

    @property
    def n_live(self) -> int:
        return int(self._base_alive.sum()) + sum(self._extra_alive)

    def is_live(self, pid: int) -> bool:
        if 0 <= pid < self.n_base:
            return bool(self._base_alive[pid])
        e = pid - self.n_base
        return 0 <= e < len(self._extra_pts) and self._extra_alive[e]

    def point(self, pid: int) -> np.ndarray:
        if not self.is_live(pid):
            raise KeyError(f"unknown point id {pid}")
        if pid < self.n_base:
            return self._base[pid]
        return self._extra_pts[pid - self.n_base]

    def live_ids(self) -> np.ndarray:
        base = np.nonzero(self._base_alive)[0]
        extra = [self.n_base + i for i, a in enumerate(self._extra_alive) if a]
        return np.concatenate([base, np.array(extra, dtype=np.int64)]) if extra else base.astype(np.int64)

    def cell_of(self, pid: int) -> tuple:
        return cell_of_coords(self.point(pid), self.k)

    # -- buckets (dict view, built on demand, kept in sync afterwards) ------

    def _ensure_buckets(self) -> dict[int, list[int]]:
        if self._buckets is None:
            buckets: dict[int, list[int]] = {}
            for pid in self.live_ids():
                flat = _flatten(cell_of_coords(self.point(int(pid)), self.k), self.k)
                buckets.setdefault(flat, []).append(int(pid))
            self._buckets = buckets
        return self._buckets

    def bucket(self, cell: tuple) -> list[int]:
        """Ids assigned to the given cell (copy; empty when none)."""
        return sorted(self._ensure_buckets().get(_flatten(cell, self.k), []))

    def occupied_cells(self):
        return {_unflatten(f, self.k, self.d) for f, b in self._ensure_buckets().items() if b}

    # -- mutations -----------------------------------------------------------

    def insert_point(self, p) -> int:
        p = np.asarray(p, dtype=np.float64).copy()
        if p.shape != (self.d,):
            raise ValueError(f"point must have dimension {self.d}")
        if p.min() < 0.0 or p.max() > 1.0:
            raise ValueError("point must lie in the unit cube")
        pid = self.n_base + len(self._extra_pts)
        self._extra_pts.append(p)
        self._extra_alive.append(True)
        if self._buckets is not None:
            flat = _flatten(cell_of_coords(p, self.k), self.k)
            self._buckets.setdefault(flat, []).append(pid)
        self._snapshot = None
        return pid

    def remove_point(self, pid: int) -> None:
        if not self.is_live(pid):
            raise KeyError(f"unknown point id {pid}")
        if self._buckets is not None:
            flat = _flatten(cell_of_coords(self.point(pid), self.k), self.k)
            self._buckets[flat].remove(pid)
            if not self._buckets[flat]:
                del self._buckets[flat]
        if pid < self.n_base:
            self._base_alive[pid] = False
        else:
            self._extra_alive[pid - self.n_base] = False
        self._snapshot = None

    # -- snapshot -------------------------------------------------------------

    def snapshot(self) -> CellSnapshot:
        if self._snapshot is None:
            ids = self.live_ids()
            if len(self._extra_pts) == 0 and bool(self._base_alive.all()):
                coords = self._base
            else:
                coords = np.array([self.point(int(pid)) for pid in ids])
                coords = coords.reshape(len(ids), self.d)
            k = self.k
            idx = np.minimum((coords * k).astype(np.int64), k - 1)
            np.maximum(idx, 0, out=idx)
            flat = idx[:, 0]
            for a in range(1, self.d):
                flat = flat * k + idx[:, a]
            order = np.argsort(flat, kind="stable")
            counts = np.bincount(flat, minlength=k ** self.d)
            starts = np.zeros(k ** self.d + 1, dtype=np.int64)
            np.cumsum(counts, out=starts[1:])
            self._snapshot = CellSnapshot(
                k=k, starts=starts,
                coords=np.ascontiguousarray(coords[order]),
                ids=np.ascontiguousarray(ids[order]),
            )
        return self._snapshot

    def check_invariants(self) -> None:
        """Every live id sits in exactly one bucket, the one of its cell, and
        its coordinates lie inside that closed cell."""
        buckets = self._ensure_buckets()
        seen: set[int] = set()
        for flat, ids in buckets.items():
            cell = _unflatten(flat, self.k, self.d)
            lo = np.array(cell, dtype=np.float64) / self.k
            hi = (np.array(cell, dtype=np.float64) + 1.0) / self.k
            for pid in ids:
                if pid in seen:
                    raise AssertionError(f"id {pid} in multiple buckets")
                seen.add(pid)
                p = self.point(pid)
                if np.any(p < lo - 1e-15) or np.any(p > hi + 1e-15):
                    raise AssertionError(f"id {pid} outside its cell {cell}")
                if cell_of_coords(p, self.k) != cell:
                    raise AssertionError(f"id {pid} bucket does not match cell_of")
        live = {int(i) for i in self.live_ids()}
        if seen != live:
            raise AssertionError("bucket ids do not match the live id set")


def build_index(instance: Instance, k: int | None = None) -> CellIndex:
    return CellIndex(instance, k)


def insert_point(index: CellIndex, p) -> int:
    return index.insert_point(p)


def remove_point(index: CellIndex, pid: int) -> None:
    index.remove_point(pid)


def cover_box(index: CellIndex, box: Box, start: tuple) -> set:
    """Connected conservative superset of the cells intersecting ``box``,
    grown from ``start`` (the cell of a point inside the box)."""
    if box.d != index.d:
        raise ValueError("box dimension does not match the index")
    if len(start) != index.d or any(not (0 <= v < index.k) for v in start):
        raise ValueError(f"start cell {start} outside the {index.k}^{index.d} grid")
    flats = kernels.cover_cells(index.k, index.d, _flatten(start, index.k),
                                box.frame.origin, box.frame.basis, box.lo, box.hi)
    return {_unflatten(int(f), index.k, index.d) for f in flats}


def _filter_in_box(snapshot: CellSnapshot, positions: np.ndarray, box: Box) -> np.ndarray:
    if positions.size == 0:
        return np.empty(0, dtype=np.int64)
    local = box.frame.to_local(snapshot.coords[positions])
    mask = np.all((local >= box.lo) & (local <= box.hi), axis=1)
    return np.sort(snapshot.ids[positions[mask]])


def collect_vertices(index: CellIndex, box: Box, start: tuple | None = None) -> np.ndarray:
    """Ids of exactly the live points whose local coordinates lie in ``box``
    (closed per-axis interval test), in ascending order.

    With ``start`` the candidate cells come from cover_box; without it they
    come from scanning the cell ranges of the box's global bounding
    rectangle with the same conservative center test.
    """
    snap = index.snapshot()
    if start is not None:
        flats = kernels.cover_cells(index.k, index.d, _flatten(start, index.k),
                                    box.frame.origin, box.frame.basis, box.lo, box.hi)
    else:
        flats = _aabb_candidate_cells(index.k, box)
    positions = kernels.gather_positions(snap.starts, np.asarray(flats, dtype=np.int64))
    return _filter_in_box(snap, positions, box)


def _aabb_candidate_cells(k: int, box: Box) -> np.ndarray:
    """Flat ids of cells whose center passes the conservative test, found by
    scanning the cell ranges of the box's global AABB (no connectivity
    requirement; used when no start cell is known)."""
    d = box.d
    corners_local = np.array(list(itertools.product(*zip(box.lo, box.hi))))
    corners = box.frame.from_local(corners_local)
    margin = math.sqrt(d) / (2.0 * k)
    lo_g = np.clip(corners.min(axis=0) - 2.0 * margin, 0.0, 1.0)
    hi_g = np.clip(corners.max(axis=0) + 2.0 * margin, 0.0, 1.0)
    lo_i = np.minimum((lo_g * k).astype(np.int64), k - 1)
    hi_i = np.minimum((hi_g * k).astype(np.int64), k - 1)
    axes = [np.arange(lo_i[a], hi_i[a] + 1) for a in range(d)]
    mesh = np.meshgrid(*axes, indexing="ij")
    centers = np.stack([(m.ravel() + 0.5) / k for m in mesh], axis=1)
    local = box.frame.to_local(centers)
    ok = np.all((local >= box.lo - margin) & (local <= box.hi + margin), axis=1)
    flat = mesh[0].ravel()
    for a in range(1, d):
        flat = flat * k + mesh[a].ravel()
    return np.sort(flat[ok])


def build_edges(instance: Instance, ids, r: float) -> dict[int, list[tuple[int, float]]]:
    """Adjacency (id -> sorted [(neighbor, weight)]) of the unit-disk graph
    induced on the given instance point ids; boundary-inclusive (<= r)."""
    ids = np.asarray(ids, dtype=np.int64)
    if ids.size != np.unique(ids).size:
        raise ValueError("ids must be unique")
    if ids.size and (ids.min() < 0 or ids.max() >= instance.n):
        raise ValueError("ids out of range for the instance")
    adj: dict[int, list[tuple[int, float]]] = {int(i): [] for i in ids}
    if ids.size >= 2:
        grid = kernels.build_cube_grid(instance.points[ids], r)
        us, vs, ws = kernels.edge_list(grid)
        for u, v, w in zip(ids[us], ids[vs], ws):
            adj[int(u)].append((int(v), float(w)))
            adj[int(v)].append((int(u), float(w)))
    for lst in adj.values():
        lst.sort()
    return adj
