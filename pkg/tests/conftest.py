"""Shared fixtures and independent test oracles.

The oracles here (brute-force adjacency, Bellman-Ford, separating-axis
box-cell intersection) deliberately share no code with the package paths
they check.
"""

import itertools

import numpy as np
import pytest

import diskoracle as dk


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger numba compilation once up front so individual tests (and the
    acceptance budgets) measure algorithm work, not JIT time."""
    for d, r in ((2, 0.4), (3, 0.5)):
        inst = dk.gen_instance(40, d, r, seed=99)
        dk.full_dijkstra(inst, 0, 1)
        dk.a_star(inst, 0, 1)
        oracle = dk.Oracle(inst)
        oracle.query(0, 1)
        dk.build_edges(inst, np.arange(40), r)
    yield


def brute_adjacency(points: np.ndarray, r: float) -> dict:
    """O(n^2) unit-disk adjacency; boundary inclusive."""
    n = points.shape[0]
    diff = points[:, None, :] - points[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    adj = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(n):
            if i != j and dist[i, j] <= r:
                adj[i].append((j, float(dist[i, j])))
    return adj


def bellman_ford(n_ids, adjacency, src):
    """Textbook Bellman-Ford over an id -> [(nbr, w)] adjacency."""
    dist = {i: float("inf") for i in n_ids}
    dist[src] = 0.0
    ids = list(n_ids)
    for _ in range(len(ids)):
        changed = False
        for u in ids:
            du = dist[u]
            if du == float("inf"):
                continue
            for v, w in adjacency.get(u, ()):
                if du + w < dist[v] - 1e-18:
                    dist[v] = du + w
                    changed = True
        if not changed:
            break
    return dist


def _project(points: np.ndarray, axis: np.ndarray):
    vals = points @ axis
    return vals.min(), vals.max()


def box_cell_intersect(cell: tuple, k: int, box) -> bool:
    """Exact closed-convex intersection of a grid cell with a rotated box via
    the separating axis theorem (d in {2, 3})."""
    d = len(cell)
    cell_lo = np.array(cell, dtype=np.float64) / k
    cell_hi = (np.array(cell, dtype=np.float64) + 1.0) / k
    cell_pts = np.array(list(itertools.product(*zip(cell_lo, cell_hi))))
    box_pts = box.frame.from_local(
        np.array(list(itertools.product(*zip(box.lo, box.hi)))))
    axes = [np.eye(d)[a] for a in range(d)]
    axes += [box.frame.basis[a] for a in range(d)]
    if d == 3:
        for a in range(3):
            for b in range(3):
                cr = np.cross(np.eye(3)[a], box.frame.basis[b])
                nn = np.linalg.norm(cr)
                if nn > 1e-12:
                    axes.append(cr / nn)
    for axis in axes:
        lo1, hi1 = _project(cell_pts, axis)
        lo2, hi2 = _project(box_pts, axis)
        if hi1 < lo2 - 1e-12 or hi2 < lo1 - 1e-12:
            return False
    return True


def check_path(result, points: np.ndarray, r: float, s: int, t: int):
    """QueryResult invariants: endpoints, hop lengths, length sum."""
    if result.distance == float("inf"):
        assert result.path == []
        return
    p = result.path
    assert p[0] == s and p[-1] == t
    total = 0.0
    for a, b in zip(p, p[1:]):
        hop = float(np.sqrt(((points[a] - points[b]) ** 2).sum()))
        assert hop <= r + 1e-12
        total += hop
    assert abs(total - result.distance) <= 1e-9
