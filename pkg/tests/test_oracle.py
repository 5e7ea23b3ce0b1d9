import json

import numpy as np
import pytest

import diskoracle as dk
from diskoracle.cells import CellIndex
from diskoracle.oracle import Oracle, bounded_dijkstra
from diskoracle.schedule import OracleParams, make_schedule, w_ub

from conftest import bellman_ford, brute_adjacency, check_path


def test_query_same_vertex():
    inst = dk.gen_instance(100, 2, 0.2, seed=1)
    res = Oracle(inst).query(7, 7)
    assert res.distance == 0.0
    assert res.path == [7]
    assert res.stats.stages == [] and not res.stats.fallback_used


def test_query_direct_edge_exact_r():
    pts = np.array([[0.0, 0.0], [0.25, 0.0], [0.9, 0.9]])
    inst = dk.Instance(d=2, r=0.25, points=pts)
    res = Oracle(inst).query(0, 1)
    assert res.distance == 0.25
    assert res.path == [0, 1]
    assert res.stats.stages == []


def test_query_unknown_ids():
    inst = dk.gen_instance(50, 2, 0.2, seed=1)
    with pytest.raises(KeyError):
        Oracle(inst).query(0, 50)


@pytest.mark.parametrize("n,d,r,seed", [
    (3000, 2, 0.06, 101),
    (1200, 3, 0.09, 102),   # sparse enough for unreachable pairs
])
def test_three_way_agreement(n, d, r, seed):
    inst = dk.gen_instance(n, d, r, seed=seed)
    oracle = Oracle(inst)
    rng = np.random.default_rng(seed)
    saw_inf = False
    for _ in range(40):
        s, t = map(int, rng.integers(0, n, 2))
        a = oracle.query(s, t)
        b = dk.full_dijkstra(inst, s, t)
        c = dk.a_star(inst, s, t)
        if np.isinf(b.distance):
            saw_inf = True
            assert np.isinf(a.distance) and np.isinf(c.distance)
        else:
            assert abs(a.distance - b.distance) <= 1e-9
            assert abs(c.distance - b.distance) <= 1e-9
        check_path(a, inst.points, r, s, t)
        check_path(b, inst.points, r, s, t)
        check_path(c, inst.points, r, s, t)
    if d == 3:
        assert saw_inf  # the sparse configuration must exercise +inf


def test_distance_never_below_euclidean():
    inst = dk.gen_instance(2000, 2, 0.08, seed=5)
    oracle = Oracle(inst)
    rng = np.random.default_rng(6)
    for _ in range(30):
        s, t = map(int, rng.integers(0, 2000, 2))
        res = oracle.query(s, t)
        w = float(np.linalg.norm(inst.points[s] - inst.points[t]))
        assert res.distance >= w - 1e-12


def test_early_stop_soundness_and_monotone_stages():
    inst = dk.gen_instance(20000, 2, 0.1, seed=33)
    # small kappa tightens the budgets so several stages reject first
    oracle = Oracle(inst, OracleParams(mode="practical", kappa=0.002))
    rng = np.random.default_rng(7)
    multi_stage_seen = False
    for _ in range(15):
        s, t = map(int, rng.integers(0, 20000, 2))
        res = oracle.query(s, t)
        nvs = [st.nv for st in res.stats.stages]
        assert nvs == sorted(nvs)
        if len(nvs) > 1:
            multi_stage_seen = True
        if res.stats.result_stage is not None:
            w = float(np.linalg.norm(inst.points[s] - inst.points[t]))
            sched = make_schedule(20000, 2, 0.1, w,
                                  OracleParams(mode="practical", kappa=0.002))
            budget = w_ub(sched, res.stats.result_stage)
            assert res.distance <= budget + 1e-12
            ref = dk.full_dijkstra(inst, s, t)
            assert abs(res.distance - ref.distance) <= 1e-9
    assert multi_stage_seen


def test_stage_records_have_edge_counts_by_default():
    inst = dk.gen_instance(20000, 2, 0.1, seed=34)
    oracle = Oracle(inst)
    rng = np.random.default_rng(8)
    for _ in range(5):
        s, t = map(int, rng.integers(0, 20000, 2))
        res = oracle.query(s, t)
        for st in res.stats.stages:
            assert st.ne >= 0
            assert st.settled <= st.nv
        fast = oracle.query(s, t, edge_counts=False)
        assert fast.distance == res.distance
        assert all(st.ne == -1 for st in fast.stats.stages)


def test_isolated_clusters_unreachable():
    rng = np.random.default_rng(9)
    a = 0.1 + 0.05 * rng.random((40, 2))
    b = 0.85 + 0.05 * rng.random((40, 2))
    inst = dk.Instance(d=2, r=0.05, points=np.vstack([a, b]))
    res = dk.full_dijkstra(inst, 0, 70)
    assert np.isinf(res.distance) and res.path == []
    assert np.isinf(Oracle(inst).query(0, 70).distance)
    assert np.isinf(dk.a_star(inst, 0, 70).distance)


def test_astar_settles_fewer_than_dijkstra():
    inst = dk.gen_instance(8000, 2, 0.08, seed=55)
    rng = np.random.default_rng(10)
    for _ in range(5):
        s, t = map(int, rng.integers(0, 8000, 2))
        fd = dk.full_dijkstra(inst, s, t)
        if np.isinf(fd.distance) or s == t:
            continue
        ast = dk.a_star(inst, s, t)
        assert ast.stats.fallback_settled < fd.stats.fallback_settled


def test_bounded_dijkstra_examples():
    assert bounded_dijkstra([3], {3: []}, 3, 3) == (0.0, {}, 1)
    pts = {0: (0.10, 0.5), 1: (0.19, 0.5), 2: (0.28, 0.5)}
    adj = {0: [(1, 0.09)], 1: [(0, 0.09), (2, 0.09)], 2: [(1, 0.09)]}
    dist, pred, settled = bounded_dijkstra([0, 1, 2], adj, 0, 2)
    assert abs(dist - 0.18) < 1e-15
    assert pred[2] == 1 and pred[1] == 0
    assert settled == 3


def test_bounded_dijkstra_source_missing():
    with pytest.raises(KeyError):
        bounded_dijkstra([1, 2], {1: []}, 0, 1)


def test_bounded_dijkstra_matches_bellman_ford():
    inst = dk.gen_instance(300, 2, 0.12, seed=60)
    ids = list(range(300))
    adj = brute_adjacency(inst.points, inst.r)
    bf = bellman_ford(ids, adj, 17)
    for t in range(0, 300, 23):
        dist, _, _ = bounded_dijkstra(ids, adj, 17, t)
        if np.isinf(bf[t]):
            assert np.isinf(dist)
        else:
            assert abs(dist - bf[t]) <= 1e-9


def test_full_dijkstra_matches_dense_oracle():
    inst = dk.gen_instance(500, 2, 0.15, seed=61)
    adj = brute_adjacency(inst.points, inst.r)
    bf = bellman_ford(range(500), adj, 0)
    for t in (1, 50, 123, 499):
        res = dk.full_dijkstra(inst, 0, t)
        if np.isinf(bf[t]):
            assert np.isinf(res.distance)
        else:
            assert abs(res.distance - bf[t]) <= 1e-9


def test_query_surface_function_matches_oracle():
    inst = dk.gen_instance(1000, 2, 0.1, seed=62)
    index = CellIndex(inst)
    res = dk.query(inst, index, 3, 907)
    assert abs(res.distance - Oracle(inst).query(3, 907).distance) <= 1e-12


def test_query_reflects_index_mutations():
    # a 3-hop corridor: removing the middle point cuts the path
    pts = np.array([[0.1, 0.5], [0.3, 0.5], [0.5, 0.5], [0.7, 0.5]])
    inst = dk.Instance(d=2, r=0.21, points=pts)
    oracle = Oracle(inst, k=4)
    assert oracle.query(0, 3).distance <= 0.61
    oracle.index.remove_point(1)
    assert np.isinf(oracle.query(0, 3).distance)
    pid = oracle.index.insert_point((0.3, 0.52))
    res = oracle.query(0, 3)
    assert np.isfinite(res.distance)
    assert pid in res.path


def test_result_json_contract():
    inst = dk.gen_instance(500, 2, 0.15, seed=63)
    res = Oracle(inst).query(0, 250, measure_time=True)
    data = json.loads(res.to_json())
    assert set(data) == {"distance", "path", "stages", "fallback"}
    for st in data["stages"]:
        assert set(st) == {"i", "nv", "ne", "settled", "micros"}
    assert data["path"][0] == 0 and data["path"][-1] == 250


def test_unreachable_json_infinity():
    pts = np.array([[0.1, 0.1], [0.9, 0.9]])
    inst = dk.Instance(d=2, r=0.05, points=pts)
    res = Oracle(inst).query(0, 1)
    assert res.to_json().startswith('{"distance": Infinity')
