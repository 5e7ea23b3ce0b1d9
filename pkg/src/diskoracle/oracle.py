"""Exact point-to-point distance queries over weighted unit-disk graphs.

query() runs the growing-box loop: for stages i = 1..i_max it collects the
vertices inside the local-frame bounding box BB(i), generates the induced
edges through r-cube buckets, and runs a Dijkstra bounded by W_ub(i). The
first stage whose s-t distance is at most W_ub(i) is exact (any shorter path
would have to live inside the stage ellipsoid, which BB(i) contains). If no
stage accepts, an unconditional full-graph Dijkstra decides, so the answer
is exact regardless of schedule quality.

full_dijkstra() is the exhaustive baseline (settles the whole reachable
component); a_star() is the goal-directed baseline with the admissible
Euclidean heuristic. Both enumerate neighbors through r-cube buckets and
never materialize the O(n^2) edge set.
"""

from __future__ import annotations

import heapq
import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .cells import CellIndex, cell_of_coords
from .geometry import Instance, build_frame, euclid_dist
from .schedule import OracleParams, bounding_box, make_schedule, w_ub


@dataclass
class StageRecord:
    i: int
    nv: int
    ne: int          # -1 when edge counting was skipped (fast path)
    settled: int
    micros: int


@dataclass
class QueryStats:
    stages: list[StageRecord] = field(default_factory=list)
    fallback_used: bool = False
    result_stage: int | None = None
    fallback_settled: int = 0
    relaxed: int = 0  # true-edge examinations across all shortest-path runs

    def settled_total(self) -> int:
        return sum(s.settled for s in self.stages) + self.fallback_settled


@dataclass
class QueryResult:
    distance: float
    path: list[int]
    stats: QueryStats

    def to_json(self) -> str:
        return json.dumps({
            "distance": self.distance,
            "path": self.path,
            "stages": [{"i": s.i, "nv": s.nv, "ne": s.ne, "settled": s.settled,
                        "micros": s.micros} for s in self.stats.stages],
            "fallback": self.stats.fallback_used,
        })


def _path_from_pred(pred: np.ndarray, s: int, t: int) -> list[int]:
    path = [t]
    guard = pred.shape[0] + 1
    while path[-1] != s:
        p = int(pred[path[-1]])
        if p < 0 or len(path) > guard:
            raise RuntimeError("broken predecessor chain")
        path.append(p)
    path.reverse()
    return path


def _now_us() -> int:
    return time.perf_counter_ns() // 1000


class Oracle:
    """Reusable per-instance state: the cell index plus the cube grid the
    fallback and baselines run on. Reflects index mutations lazily.

    Queries are independent and read-only over the shared index, so they may
    run concurrently as long as nobody mutates the index meanwhile.
    """

    def __init__(self, instance: Instance, params: OracleParams | None = None,
                 k: int | None = None, index: CellIndex | None = None):
        self.instance = instance
        self.params = params or OracleParams()
        self.index = index if index is not None else CellIndex(instance, k)
        self._grid_snapshot = None
        self._full_grid = None
        self._ids_by_row = None

    def _full_graph(self):
        snap = self.index.snapshot()
        if self._grid_snapshot is not snap:
            row_order = np.argsort(snap.ids, kind="stable")
            coords = snap.coords[row_order]
            self._ids_by_row = snap.ids[row_order]
            self._full_grid = kernels.build_cube_grid(coords, self.instance.r)
            self._grid_snapshot = snap
        return self._full_grid, self._ids_by_row

    def _row_of(self, pid: int) -> int:
        ids = self._ids_by_row
        row = int(np.searchsorted(ids, pid))
        if row >= ids.shape[0] or ids[row] != pid:
            raise KeyError(f"unknown point id {pid}")
        return row

    def query(self, s_id: int, t_id: int, *, edge_counts: bool = True,
              measure_time: bool = False) -> QueryResult:
        index = self.index
        if not index.is_live(s_id):
            raise KeyError(f"unknown point id {s_id}")
        if not index.is_live(t_id):
            raise KeyError(f"unknown point id {t_id}")
        stats = QueryStats()
        if s_id == t_id:
            return QueryResult(0.0, [int(s_id)], stats)
        s = index.point(s_id)
        t = index.point(t_id)
        r = self.instance.r
        w = euclid_dist(s, t)
        if w <= r:
            return QueryResult(w, [int(s_id), int(t_id)], stats)

        frame = build_frame(s, t)
        sched = make_schedule(index.n_live, index.d, r, w, self.params)
        snap = index.snapshot()
        start_flat = 0
        for v in cell_of_coords(s, index.k):
            start_flat = start_flat * index.k + v

        for i in range(1, sched.i_max + 1):
            t0 = _now_us() if measure_time else 0
            box = bounding_box(sched, frame, i)
            budget = w_ub(sched, i)
            flats = kernels.cover_cells(index.k, index.d, start_flat,
                                        frame.origin, frame.basis, box.lo, box.hi)
            positions = kernels.gather_positions(snap.starts, flats)
            local = frame.to_local(snap.coords[positions])
            inside = np.all((local >= box.lo) & (local <= box.hi), axis=1)
            sel = positions[inside]
            id_order = np.argsort(snap.ids[sel], kind="stable")
            sub_ids = snap.ids[sel][id_order]
            sub_coords = snap.coords[sel][id_order]

            s_local = int(np.searchsorted(sub_ids, s_id))
            t_local = int(np.searchsorted(sub_ids, t_id))
            if sub_ids[s_local] != s_id or sub_ids[t_local] != t_id:
                raise RuntimeError("query endpoints missing from their own stage box")
            subgrid = kernels.build_cube_grid(sub_coords, r)
            ne = kernels.count_edges(subgrid) if edge_counts else -1
            res = kernels.run_dijkstra(subgrid, s_local, t_local,
                                       mode="bounded", bound=budget)
            stats.relaxed += res.relaxed
            micros = (_now_us() - t0) if measure_time else 0
            stats.stages.append(StageRecord(i=i, nv=int(sub_ids.shape[0]), ne=ne,
                                            settled=res.settled, micros=micros))
            if res.reached:
                stats.result_stage = i
                path = [int(sub_ids[p]) for p in _path_from_pred(res.pred, s_local, t_local)]
                return QueryResult(float(res.dist[t_local]), path, stats)
            if box.covers_unit_cube():
                # G(i) already is the whole graph; stop growing and let the
                # fallback (same full graph) decide.
                break

        grid, ids_by_row = self._full_graph()
        res = kernels.run_dijkstra(grid, self._row_of(s_id), self._row_of(t_id), mode="goal")
        stats.fallback_used = True
        stats.fallback_settled = res.settled
        stats.relaxed += res.relaxed
        t_row = self._row_of(t_id)
        if not res.reached:
            return QueryResult(float("inf"), [], stats)
        path = [int(ids_by_row[p]) for p in _path_from_pred(res.pred, self._row_of(s_id), t_row)]
        return QueryResult(float(res.dist[t_row]), path, stats)


def query(instance: Instance, index: CellIndex, s_id: int, t_id: int,
          params: OracleParams | None = None, *, edge_counts: bool = True,
          measure_time: bool = False) -> QueryResult:
    """One-shot form of Oracle.query over a caller-supplied index."""
    oracle = Oracle(instance, params, index=index)
    return oracle.query(s_id, t_id, edge_counts=edge_counts, measure_time=measure_time)


def _validate_instance_ids(instance: Instance, *ids: int) -> None:
    for pid in ids:
        if not (0 <= pid < instance.n):
            raise KeyError(f"unknown point id {pid}")


def full_dijkstra(instance: Instance, s_id: int, t_id: int) -> QueryResult:
    """Exhaustive Dijkstra from s over the entire implicit graph; settles the
    whole reachable component, then reads off the distance to t."""
    _validate_instance_ids(instance, s_id, t_id)
    stats = QueryStats(fallback_used=True)
    if s_id == t_id:
        return QueryResult(0.0, [int(s_id)], stats)
    grid = kernels.build_cube_grid(instance.points, instance.r)
    res = kernels.run_dijkstra(grid, int(s_id), int(t_id), mode="full")
    stats.fallback_settled = res.settled
    stats.relaxed = res.relaxed
    if not np.isfinite(res.dist[t_id]):
        return QueryResult(float("inf"), [], stats)
    return QueryResult(float(res.dist[t_id]),
                       _path_from_pred(res.pred, int(s_id), int(t_id)), stats)


def a_star(instance: Instance, s_id: int, t_id: int) -> QueryResult:
    """Goal-directed baseline; exact because the Euclidean heuristic never
    overestimates Euclidean-weighted paths."""
    _validate_instance_ids(instance, s_id, t_id)
    stats = QueryStats(fallback_used=True)
    if s_id == t_id:
        return QueryResult(0.0, [int(s_id)], stats)
    grid = kernels.build_cube_grid(instance.points, instance.r)
    res = kernels.run_astar(grid, int(s_id), int(t_id))
    stats.fallback_settled = res.settled
    stats.relaxed = res.relaxed
    if not res.reached:
        return QueryResult(float("inf"), [], stats)
    return QueryResult(float(res.dist[t_id]),
                       _path_from_pred(res.pred, int(s_id), int(t_id)), stats)


def bounded_dijkstra(ids, adjacency: dict, s_id: int, t_id: int):
    """Dijkstra restricted to the given vertex set and adjacency lists.

    Returns (distance, predecessor map, settled count); distance is +inf when
    t is unreachable inside the induced subgraph. Ties break toward the lower
    point id.
    """
    idset = set(int(i) for i in ids)
    if int(s_id) not in idset:
        raise KeyError(f"source {s_id} not in the vertex set")
    dist = {int(s_id): 0.0}
    pred: dict[int, int] = {}
    done = set()
    heap = [(0.0, int(s_id))]
    settled = 0
    while heap:
        key, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        settled += 1
        if u == t_id:
            break
        for v, wgt in adjacency.get(u, ()):
            if v not in idset or v in done:
                continue
            nd = key + wgt
            if nd < dist.get(v, float("inf")):
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
    return dist.get(int(t_id), float("inf")), pred, settled
