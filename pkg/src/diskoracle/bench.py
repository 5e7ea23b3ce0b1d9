"""Benchmark machinery behind `diskoracle bench`.

Queries are random vertex pairs grouped into w-buckets [r, 2r), [2r, 4r), ...
so the per-gap scaling of the three algorithms is visible in one CSV. The
primary metrics are hardware-independent (settled vertices, touched edges);
wall times are recorded only under --measure-time so fixed-seed runs stay
byte-identical.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .geometry import STREAM_BENCH, Instance, gen_instance, generator
from .oracle import Oracle
from .schedule import OracleParams

CSV_HEADER = "n,d,r,w_bucket,algo,mean_settled,mean_touched_edges,mean_time_us,queries"

ALGOS = ("oracle", "dijkstra", "astar")


@dataclass
class BenchConfig:
    n_list: list[int]
    d: int = 2
    r_rule: str = "fixed"          # fixed | conn | quarter
    r_value: float = 0.1           # the fixed r, or the coefficient c
    queries: int = 50
    seed: int = 1
    mode: str = "practical"
    kappa: float = 1.0
    algos: tuple = ALGOS
    measure_time: bool = False
    w_lo: float | None = None      # optional w-window (units of r)
    w_hi: float | None = None

    def __post_init__(self):
        if self.r_rule not in ("fixed", "conn", "quarter"):
            raise ValueError(f"unknown r rule {self.r_rule!r}")
        bad = [a for a in self.algos if a not in ALGOS]
        if bad:
            raise ValueError(f"unknown algos: {bad}")
        if self.queries < 1:
            raise ValueError("queries must be >= 1")


def resolve_r(rule: str, value: float, n: int, d: int) -> float:
    if rule == "fixed":
        return float(value)
    if rule == "conn":
        return float(value) * (math.log(n) / n) ** (1.0 / d)
    return float(value) * n ** -0.25


def sample_pairs(instance: Instance, count: int, rng: np.random.Generator,
                 w_lo: float | None = None, w_hi: float | None = None):
    """Random distinct vertex pairs, optionally conditioned on w in [w_lo, w_hi)."""
    pts = instance.points
    s_out = np.empty(count, dtype=np.int64)
    t_out = np.empty(count, dtype=np.int64)
    got = 0
    attempts = 0
    while got < count:
        attempts += 1
        if attempts > 2000 * count + 10_000:
            raise RuntimeError("query-pair rejection sampling did not converge; "
                               "is the w-window feasible for this instance?")
        s, t = map(int, rng.integers(0, instance.n, size=2))
        if s == t:
            continue
        w = float(np.sqrt(np.sum((pts[s] - pts[t]) ** 2)))
        if w_lo is not None and w < w_lo:
            continue
        if w_hi is not None and w >= w_hi:
            continue
        s_out[got] = s
        t_out[got] = t
        got += 1
    return s_out, t_out


def w_bucket(w: float, r: float) -> tuple[int, str]:
    """(sort key, label) of the query's w-bucket."""
    if w < r:
        return 0, "[0r,1r)"
    b = int(math.floor(math.log2(w / r)))
    return 2 ** b, f"[{2 ** b}r,{2 ** (b + 1)}r)"


def w_bucket_label(w: float, r: float) -> str:
    return w_bucket(w, r)[1]


@dataclass
class _Agg:
    settled: float = 0.0
    touched: float = 0.0
    micros: float = 0.0
    queries: int = 0


def component_sizes(points: np.ndarray, r: float) -> np.ndarray:
    """Size of each point's connected component. An exhaustive Dijkstra from
    s settles exactly component_sizes[s] vertices."""
    labels = kernels.component_labels(points, r)
    counts = np.bincount(labels, minlength=points.shape[0])
    return counts[labels]


def run_bench(cfg: BenchConfig):
    """Execute the benchmark; returns CSV rows (without header)."""
    params = OracleParams(mode=cfg.mode, kappa=cfg.kappa)
    rows = []
    for n in cfg.n_list:
        r = resolve_r(cfg.r_rule, cfg.r_value, n, cfg.d)
        instance = gen_instance(n, cfg.d, r, cfg.seed)
        oracle = Oracle(instance, params)
        rng = generator(cfg.seed, STREAM_BENCH, n)
        w_lo = cfg.w_lo * r if cfg.w_lo is not None else None
        w_hi = cfg.w_hi * r if cfg.w_hi is not None else None
        s_ids, t_ids = sample_pairs(instance, cfg.queries, rng, w_lo, w_hi)
        grid, _ = oracle._full_graph()
        agg: dict[tuple[int, str], _Agg] = {}
        labels = {}
        for s, t in zip(s_ids, t_ids):
            w = float(np.sqrt(np.sum((instance.points[s] - instance.points[t]) ** 2)))
            bkey, blabel = w_bucket(w, r)
            labels[bkey] = blabel
            for algo in cfg.algos:
                t0 = time.perf_counter_ns() if cfg.measure_time else 0
                if algo == "oracle":
                    res = oracle.query(int(s), int(t), edge_counts=False)
                    settled = res.stats.settled_total()
                    touched = res.stats.relaxed
                elif algo == "dijkstra":
                    sp = kernels.run_dijkstra(grid, int(s), int(t), mode="full")
                    settled = sp.settled
                    touched = sp.relaxed
                else:
                    sp = kernels.run_astar(grid, int(s), int(t))
                    settled = sp.settled
                    touched = sp.relaxed
                micros = (time.perf_counter_ns() - t0) // 1000 if cfg.measure_time else 0
                a = agg.setdefault((bkey, algo), _Agg())
                a.settled += settled
                a.touched += touched
                a.micros += micros
                a.queries += 1
        for (bkey, algo) in sorted(agg):
            a = agg[(bkey, algo)]
            rows.append(
                f"{n},{cfg.d},{r:.17g},\"{labels[bkey]}\",{algo},"
                f"{a.settled / a.queries:.6f},{a.touched / a.queries:.6f},"
                f"{a.micros / a.queries:.3f},{a.queries}"
            )
    return rows


def bench_csv(cfg: BenchConfig) -> str:
    return "\n".join([CSV_HEADER, *run_bench(cfg)]) + "\n"
