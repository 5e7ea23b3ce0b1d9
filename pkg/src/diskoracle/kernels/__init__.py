"""Backend-dispatching wrappers around the hot kernels.

The wrappers accept/return original point ids; internally everything runs in
the position space of cube-sorted arrays. The numba path covers d in {2, 3}
(the dimensions the oracle benchmarks exercise); other d, or the
DISKORACLE_DISABLE_NUMBA flag, route to the numpy fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..backend import numba_enabled
from . import numpy_impl
from .numba_impl import INF, MODE_BOUNDED, MODE_FULL, MODE_GOAL

_MODES = {"full": MODE_FULL, "goal": MODE_GOAL, "bounded": MODE_BOUNDED}


def _numba_mod():
    from . import numba_impl

    return numba_impl


def _use_numba(d: int) -> bool:
    return d in (2, 3) and numba_enabled()


@dataclass(frozen=True)
class CubeGrid:
    """Points bucketed into axis-aligned cubes of a fixed side, stored as a
    sorted-array CSR: positions starts[c]..starts[c+1] hold cube c's points."""

    coords: np.ndarray        # (n, d) sorted by flat cube id, C-contiguous
    axes: tuple               # per-axis contiguous views of coords
    order: np.ndarray         # position -> original id
    pos_of: np.ndarray        # original id -> position
    starts: np.ndarray        # (nc^d + 1,)
    nc: int
    side: float

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def d(self) -> int:
        return self.coords.shape[1]


def build_cube_grid(points: np.ndarray, side: float) -> CubeGrid:
    points = np.ascontiguousarray(points, dtype=np.float64)
    n, d = points.shape
    nc = max(int(np.ceil(1.0 / side)), 1)
    if nc ** d > 80_000_000:
        raise ValueError(f"cube grid too fine: ({nc})^{d} cells for side {side}")
    idx = np.minimum((points / side).astype(np.int64), nc - 1)
    np.maximum(idx, 0, out=idx)
    flat = idx[:, 0]
    for a in range(1, d):
        flat = flat * nc + idx[:, a]
    order = np.argsort(flat, kind="stable")
    counts = np.bincount(flat, minlength=nc ** d)
    starts = np.zeros(nc ** d + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    coords = np.ascontiguousarray(points[order])
    pos_of = np.empty(n, dtype=np.int64)
    pos_of[order] = np.arange(n, dtype=np.int64)
    axes = tuple(np.ascontiguousarray(coords[:, a]) for a in range(d))
    return CubeGrid(coords=coords, axes=axes, order=order.astype(np.int64),
                    pos_of=pos_of, starts=starts, nc=nc, side=float(side))


class SPResult(NamedTuple):
    dist: np.ndarray       # per original id; np.inf where unreached
    pred: np.ndarray       # per original id; -1 where no predecessor
    settled: int
    relaxed: int
    reached: bool          # dst settled (always False when dst < 0)


def _translate(grid: CubeGrid, dist_pos, pred_pos, settled, relaxed, reached) -> SPResult:
    n = grid.n
    dist = np.full(n, np.inf)
    pos_vals = np.where(dist_pos >= INF * 0.5, np.inf, dist_pos)
    dist[grid.order] = pos_vals
    pred = np.full(n, -1, dtype=np.int64)
    has = pred_pos >= 0
    pred[grid.order[has]] = grid.order[pred_pos[has]]
    return SPResult(dist, pred, int(settled), int(relaxed), bool(reached))


def run_dijkstra(grid: CubeGrid, src_id: int, dst_id: int = -1, mode: str = "full",
                 bound: float | None = None) -> SPResult:
    m = _MODES[mode]
    b = INF if bound is None else float(bound)
    src = int(grid.pos_of[src_id])
    dst = int(grid.pos_of[dst_id]) if dst_id >= 0 else -1
    if _use_numba(grid.d):
        nb = _numba_mod()
        if grid.d == 2:
            res = nb.dijkstra2(grid.axes[0], grid.axes[1], grid.starts, grid.nc,
                               grid.side, src, dst, m, b)
        else:
            res = nb.dijkstra3(grid.axes[0], grid.axes[1], grid.axes[2], grid.starts,
                               grid.nc, grid.side, src, dst, m, b)
    else:
        res = numpy_impl.dijkstra_nd(grid.coords, grid.starts, grid.nc, grid.side,
                                     src, dst, m, b)
    return _translate(grid, *res)


def run_astar(grid: CubeGrid, src_id: int, dst_id: int) -> SPResult:
    src = int(grid.pos_of[src_id])
    dst = int(grid.pos_of[dst_id])
    if _use_numba(grid.d):
        nb = _numba_mod()
        if grid.d == 2:
            res = nb.astar2(grid.axes[0], grid.axes[1], grid.starts, grid.nc,
                            grid.side, src, dst)
        else:
            res = nb.astar3(grid.axes[0], grid.axes[1], grid.axes[2], grid.starts,
                            grid.nc, grid.side, src, dst)
    else:
        res = numpy_impl.astar_nd(grid.coords, grid.starts, grid.nc, grid.side, src, dst)
    return _translate(grid, *res)


def count_edges(grid: CubeGrid) -> int:
    if _use_numba(grid.d):
        nb = _numba_mod()
        if grid.d == 2:
            return int(nb.count_edges2(grid.axes[0], grid.axes[1], grid.starts,
                                       grid.nc, grid.side))
        return int(nb.count_edges3(grid.axes[0], grid.axes[1], grid.axes[2],
                                   grid.starts, grid.nc, grid.side))
    return int(numpy_impl.count_edges_nd(grid.coords, grid.starts, grid.nc, grid.side))


def edge_list(grid: CubeGrid):
    """Undirected edges as (u_ids, v_ids, weights), each pair once."""
    if _use_numba(grid.d):
        nb = _numba_mod()
        m = count_edges(grid)
        us = np.empty(m, dtype=np.int64)
        vs = np.empty(m, dtype=np.int64)
        ws = np.empty(m, dtype=np.float64)
        if grid.d == 2:
            got = nb.edge_pairs2(grid.axes[0], grid.axes[1], grid.starts, grid.nc,
                                 grid.side, us, vs, ws)
        else:
            got = nb.edge_pairs3(grid.axes[0], grid.axes[1], grid.axes[2], grid.starts,
                                 grid.nc, grid.side, us, vs, ws)
        assert got == m
    else:
        us, vs, ws = numpy_impl.edge_pairs_nd(grid.coords, grid.starts, grid.nc, grid.side)
    return grid.order[us], grid.order[vs], ws


def cover_cells(k: int, d: int, start_flat: int, origin: np.ndarray, basis: np.ndarray,
                lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Flat ids of the connected conservative cell cover of a local-frame box.

    A cell is accepted iff its center, in local coordinates, is within half
    the cell diagonal sqrt(d)/(2k) of [lo, hi] on every axis.
    """
    margin = float(np.sqrt(d) / (2.0 * k))
    if _use_numba(d):
        nb = _numba_mod()
        if d == 2:
            cells = nb.cover_bfs2(k, int(start_flat), float(origin[0]), float(origin[1]),
                                  float(basis[0, 0]), float(basis[0, 1]),
                                  float(basis[1, 0]), float(basis[1, 1]),
                                  float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1]),
                                  margin)
        else:
            cells = nb.cover_bfs3(k, int(start_flat), float(origin[0]), float(origin[1]),
                                  float(origin[2]), np.ascontiguousarray(basis),
                                  np.ascontiguousarray(lo), np.ascontiguousarray(hi),
                                  margin)
        return np.sort(cells)
    return numpy_impl.cover_bfs_nd(k, d, int(start_flat), origin, basis, lo, hi, margin)


def component_labels(points: np.ndarray, r: float) -> np.ndarray:
    """Connected-component label per point of the unit-disk graph.

    Labels are arbitrary but consistent ints; equal label iff mutually
    reachable. An exhaustive Dijkstra from s settles exactly the points
    sharing s's label.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    d = points.shape[1]
    side = r / np.sqrt(d) * (1.0 - 1e-12)
    grid = build_cube_grid(points, side)
    if _use_numba(d):
        nb = _numba_mod()
        if d == 2:
            pos_labels = nb.components2(grid.axes[0], grid.axes[1], grid.starts,
                                        grid.nc, grid.side, r)
        else:
            pos_labels = nb.components3(grid.axes[0], grid.axes[1], grid.axes[2],
                                        grid.starts, grid.nc, grid.side, r)
    else:
        pos_labels = numpy_impl.components_nd(grid.coords, grid.starts, grid.nc,
                                              grid.side, r)
    out = np.empty(points.shape[0], dtype=np.int64)
    out[grid.order] = pos_labels
    return out


def gather_positions(starts: np.ndarray, cells: np.ndarray) -> np.ndarray:
    """Concatenated snapshot positions of the given (flat) cells."""
    total = int(np.sum(starts[cells + 1] - starts[cells]))
    out = np.empty(total, dtype=np.int64)
    if numba_enabled():
        nb = _numba_mod()
        got = nb.gather_runs(starts, np.ascontiguousarray(cells, dtype=np.int64), out)
        assert got == total
        return out
    pos = 0
    for c in cells:
        a, b = int(starts[c]), int(starts[c + 1])
        out[pos:pos + (b - a)] = np.arange(a, b)
        pos += b - a
    return out
