"""Numba and numpy backends must agree exactly; Dijkstra must match
independent shortest-path oracles."""

import networkx as nx
import numpy as np
import pytest

import diskoracle as dk
from diskoracle import kernels
from diskoracle.backend import ENV_FLAG, numba_enabled

from conftest import brute_adjacency


@pytest.fixture(params=[2, 3])
def small_instance(request):
    d = request.param
    r = 0.14 if d == 2 else 0.3
    return dk.gen_instance(600, d, r, seed=31 + d)


def _nx_graph(points, r):
    g = nx.Graph()
    g.add_nodes_from(range(points.shape[0]))
    adj = brute_adjacency(points, r)
    for u, lst in adj.items():
        for v, w in lst:
            g.add_edge(u, v, weight=w)
    return g


def test_numba_is_enabled_by_default():
    assert numba_enabled()


def test_env_flag_disables(monkeypatch):
    monkeypatch.setenv(ENV_FLAG, "1")
    assert not numba_enabled()
    monkeypatch.setenv(ENV_FLAG, "off")
    assert numba_enabled()


def test_dijkstra_matches_networkx(small_instance):
    inst = small_instance
    grid = kernels.build_cube_grid(inst.points, inst.r)
    res = kernels.run_dijkstra(grid, 0, -1, mode="full")
    lengths = nx.single_source_dijkstra_path_length(
        _nx_graph(inst.points, inst.r), 0)
    for v in range(inst.n):
        want = lengths.get(v, float("inf"))
        assert abs(res.dist[v] - want) < 1e-9 or (np.isinf(res.dist[v]) and np.isinf(want))
    assert res.settled == len(lengths)


@pytest.mark.parametrize("mode", ["full", "goal", "bounded"])
def test_backends_agree(small_instance, monkeypatch, mode):
    inst = small_instance
    grid = kernels.build_cube_grid(inst.points, inst.r)
    dst = inst.n // 2
    bound = 0.8 if mode == "bounded" else None
    a = kernels.run_dijkstra(grid, 0, dst, mode=mode, bound=bound)
    monkeypatch.setenv(ENV_FLAG, "1")
    b = kernels.run_dijkstra(grid, 0, dst, mode=mode, bound=bound)
    assert a.settled == b.settled
    assert a.relaxed == b.relaxed
    assert a.reached == b.reached
    finite = np.isfinite(a.dist)
    assert np.array_equal(finite, np.isfinite(b.dist))
    assert np.allclose(a.dist[finite], b.dist[finite], atol=1e-12)


def test_astar_backends_agree(small_instance, monkeypatch):
    inst = small_instance
    grid = kernels.build_cube_grid(inst.points, inst.r)
    a = kernels.run_astar(grid, 3, inst.n - 1)
    monkeypatch.setenv(ENV_FLAG, "1")
    b = kernels.run_astar(grid, 3, inst.n - 1)
    assert a.settled == b.settled and a.relaxed == b.relaxed and a.reached == b.reached
    if a.reached:
        assert abs(a.dist[inst.n - 1] - b.dist[inst.n - 1]) < 1e-12


def test_astar_matches_dijkstra_distance(small_instance):
    inst = small_instance
    grid = kernels.build_cube_grid(inst.points, inst.r)
    rng = np.random.default_rng(2)
    for _ in range(20):
        s, t = map(int, rng.integers(0, inst.n, 2))
        da = kernels.run_astar(grid, s, t)
        dd = kernels.run_dijkstra(grid, s, t, mode="goal")
        va = da.dist[t] if da.reached else float("inf")
        vd = dd.dist[t] if dd.reached else float("inf")
        assert (np.isinf(va) and np.isinf(vd)) or abs(va - vd) < 1e-9


def test_count_edges_and_pairs_agree(small_instance, monkeypatch):
    inst = small_instance
    grid = kernels.build_cube_grid(inst.points, inst.r)
    cnt = kernels.count_edges(grid)
    us, vs, ws = kernels.edge_list(grid)
    assert len(us) == cnt
    brute = sum(len(v) for v in brute_adjacency(inst.points, inst.r).values()) // 2
    assert cnt == brute
    monkeypatch.setenv(ENV_FLAG, "1")
    assert kernels.count_edges(grid) == cnt
    us2, vs2, ws2 = kernels.edge_list(grid)
    a = sorted(zip(map(int, us), map(int, vs)))
    b = sorted(zip(map(int, us2), map(int, vs2)))
    assert a == b


def test_bounded_prune_semantics():
    inst = dk.gen_instance(800, 2, 0.12, seed=40)
    grid = kernels.build_cube_grid(inst.points, inst.r)
    rng = np.random.default_rng(3)
    for _ in range(10):
        s, t = map(int, rng.integers(0, 800, 2))
        exact = kernels.run_dijkstra(grid, s, t, mode="goal")
        if not exact.reached:
            continue
        d = float(exact.dist[t])
        tight = kernels.run_dijkstra(grid, s, t, mode="bounded", bound=d)
        assert tight.reached and abs(tight.dist[t] - d) < 1e-15
        loose = kernels.run_dijkstra(grid, s, t, mode="bounded", bound=d * 0.9)
        assert not loose.reached
        assert loose.settled <= exact.settled


def test_cover_backends_agree(monkeypatch):
    for d, k in ((2, 15), (3, 7)):
        rng = np.random.default_rng(d)
        s = rng.uniform(0.3, 0.7, size=d)
        t = rng.uniform(0.0, 1.0, size=d)
        f = dk.build_frame(s, t)
        lo = -rng.uniform(0.05, 0.2, size=d)
        hi = rng.uniform(0.05, 0.2, size=d)
        start = 0
        for v in np.minimum((s * k).astype(int), k - 1):
            start = start * k + int(v)
        a = kernels.cover_cells(k, d, start, f.origin, f.basis, lo, hi)
        monkeypatch.setenv(ENV_FLAG, "1")
        b = kernels.cover_cells(k, d, start, f.origin, f.basis, lo, hi)
        monkeypatch.delenv(ENV_FLAG)
        assert np.array_equal(np.sort(a), np.sort(b))


def test_numpy_backend_handles_d4():
    inst = dk.gen_instance(120, 4, 0.5, seed=9)
    grid = kernels.build_cube_grid(inst.points, inst.r)
    res = kernels.run_dijkstra(grid, 0, -1, mode="full")
    lengths = nx.single_source_dijkstra_path_length(
        _nx_graph(inst.points, inst.r), 0)
    for v in range(inst.n):
        want = lengths.get(v, float("inf"))
        assert abs(res.dist[v] - want) < 1e-9 or (np.isinf(res.dist[v]) and np.isinf(want))


def test_component_labels_match_reachability():
    inst = dk.gen_instance(900, 2, 0.05, seed=77)
    labels = kernels.component_labels(inst.points, inst.r)
    grid = kernels.build_cube_grid(inst.points, inst.r)
    rng = np.random.default_rng(4)
    sizes = np.bincount(labels)
    for _ in range(4):
        s = int(rng.integers(0, 900))
        res = kernels.run_dijkstra(grid, s, -1, mode="full")
        assert res.settled == sizes[labels[s]]
        same = labels == labels[s]
        assert np.array_equal(np.isfinite(res.dist), same)
