"""Verification suites behind `diskoracle verify`.

Each suite returns (ok, report lines). They re-check the probabilistic
machinery at CLI-friendly sizes; the full-size counterparts live in the
acceptance test module.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import channel as ch
from . import percolation as perc
from .geometry import STREAM_VERIFY, build_frame, gen_instance, generator
from .oracle import full_dijkstra
from .schedule import (C_GRID, OracleParams, c_prime, channel_discretization,
                       h_limit, make_schedule, stage_empty_box_exponent, w_ub,
                       w_ub_from_h)

# Appendix-style 5x5 counterexample: off cells block the grid although no
# single connected off component does.
COUNTEREXAMPLE_N = 5
COUNTEREXAMPLE_OFF = {(1, 4), (2, 3), (3, 2), (4, 4), (5, 3)}
COUNTEREXAMPLE_REACHABLE = {
    (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1),
    (4, 1), (4, 2), (4, 3), (5, 1), (5, 2),
}


def counterexample_grid() -> perc.GridInstance:
    return perc.grid_from_off_cells(COUNTEREXAMPLE_N, COUNTEREXAMPLE_OFF)


def _fmt(ok: bool, msg: str) -> str:
    return f"{'ok  ' if ok else 'FAIL'} {msg}"


def suite_percolation(seed: int = 1, trials: int = 20_000) -> tuple[bool, list[str]]:
    lines = []
    all_ok = True

    worst = 0.0
    for n in (1, 2, 3):
        for q in np.linspace(0.0, 1.0, 21):
            worst = max(worst, abs(perc.exact_no_path_prob(n, float(q))
                                   - perc.enumerate_no_path_prob(n, float(q))))
    ok = worst <= 1e-12
    all_ok &= ok
    lines.append(_fmt(ok, f"exact DP vs enumeration (n<=3, 21 q values): max err {worst:.2e}"))

    for n, q in ((8, 0.35), (10, 0.5)):
        est = perc.sample_no_path_prob(n, q, trials, seed)
        exact = perc.exact_no_path_prob(n, q)
        sigma = math.sqrt(exact * (1.0 - exact) / trials)
        ok = abs(est.mean - exact) <= 4.0 * sigma
        all_ok &= ok
        lines.append(_fmt(ok, f"Monte Carlo vs DP at n={n}, q={q}: "
                              f"|{est.mean:.5f} - {exact:.5f}| <= 4*{sigma:.5f}"))

    qs = np.linspace(0.02, 0.98, 25)
    vals = [perc.exact_no_path_prob(9, float(q)) for q in qs]
    ok = all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    all_ok &= ok
    lines.append(_fmt(ok, "no-path probability nondecreasing in q (n=9, 25-point grid)"))

    ok = True
    for n in range(1, 15):
        for q in (2.0 ** -20, 2.0 ** -24, 2.0 ** -28):
            ex = perc.exact_no_path_prob(n, q)
            if ex > perc.no_path_bound(q) or ex > math.sqrt(C_GRID * q):
                ok = False
    all_ok &= ok
    lines.append(_fmt(ok, "contour bound and sqrt(c q) dominate the exact "
                          "probability (n<=14, q in {2^-20,2^-24,2^-28})"))

    g = counterexample_grid()
    ok = (not perc.grid_reachable(g)
          and perc.reachable_cells(g) == COUNTEREXAMPLE_REACHABLE
          and not perc.antipath_exists(g, 4)
          and not perc.antipath_exists(g, 8))
    all_ok &= ok
    lines.append(_fmt(ok, "5x5 counterexample: unreachable yet antipath-free (4- and 8-conn)"))

    return bool(all_ok), lines


def _exhaustive_channel_grid_equiv(K: int) -> bool:
    r = 0.2
    w = (r / 4.0) * (4 * K + 1) * 0.999
    spec = ch.make_spec(np.array([0.1, 0.5]), np.array([0.1 + w, 0.5]), r,
                        0.5 * ch.max_h(2, r))
    assert spec.K == K
    boxes = ch.reachable_boxes(spec)
    for mask in range(1 << len(boxes)):
        occ = ch.ChannelOccupancy(
            spec=spec,
            occupied=frozenset(b for i, b in enumerate(boxes) if (mask >> i) & 1))
        if ch.channel_path_exists(occ) != perc.grid_reachable(ch.to_grid(occ)):
            return False
    return True


def suite_channel(seed: int = 1, trials: int = 1000) -> tuple[bool, list[str]]:
    lines = []
    all_ok = True
    rng = generator(seed, STREAM_VERIFY, 1)

    # Jump-edge soundness: points in jump-adjacent boxes are within r.
    ok = True
    worst = 0.0
    for _ in range(trials):
        d = int(rng.integers(2, 4))
        r = float(rng.uniform(0.05, 0.5))
        w = float(rng.uniform(r * 1.01, min(1.0, 4 * r)))
        h = float(rng.uniform(1e-4, ch.max_h(d, r)))
        K, l = channel_discretization(w, r)
        k = int(rng.integers(0, 2 * K))
        lim = min(k, 2 * K - k)
        z = [2 * k]
        for _a in range(d - 1):
            lo = -lim if (-lim - k) % 2 == 0 else -lim + 1
            choices = list(range(lo, lim + 1, 2)) or [0]
            z.append(int(rng.choice(choices)))
        a = tuple(z)
        b = (a[0] + 2, *(a[i] + int(rng.choice([-1, 1])) for i in range(1, d)))
        u = np.array([rng.uniform(l * a[0], l * (a[0] + 1)),
                      *(rng.uniform((a[i] - 0.5) * h, (a[i] + 0.5) * h) for i in range(1, d))])
        v = np.array([rng.uniform(l * b[0], l * (b[0] + 1)),
                      *(rng.uniform((b[i] - 0.5) * h, (b[i] + 0.5) * h) for i in range(1, d))])
        dist = float(np.sqrt(np.sum((u - v) ** 2)))
        worst = max(worst, dist / r)
        if dist > r:
            ok = False
    all_ok &= ok
    lines.append(_fmt(ok, f"jump-edge soundness over {trials} random box pairs "
                          f"(worst |u-v|/r = {worst:.4f})"))

    # Certificate soundness on random instances.
    violations = 0
    certified = 0
    for trial in range(trials):
        d = 2 if trial % 2 == 0 else 3
        n = 700
        r = 0.35 if d == 2 else 0.5
        inst = gen_instance(n, d, r, seed=int(rng.integers(0, 2 ** 60)))
        sid, tid = map(int, rng.integers(0, n, size=2))
        w = float(np.sqrt(np.sum((inst.points[sid] - inst.points[tid]) ** 2)))
        if w <= r or sid == tid:
            continue
        h = float(rng.uniform(0.2, 1.0) * ch.max_h(d, r))
        occ = ch.occupancy(inst, inst.points[sid], inst.points[tid], h)
        if not ch.channel_path_exists(occ):
            continue
        certified += 1
        cert = ch.length_certificate(occ.spec)
        dist = full_dijkstra(inst, sid, tid).distance
        if not dist <= cert * (1.0 + 1e-12):
            violations += 1
    ok = violations == 0 and certified >= trials // 10
    all_ok &= ok
    lines.append(_fmt(ok, f"certificate soundness: {certified} certified trials, "
                          f"{violations} violations"))

    # Channel <-> grid correspondence.
    ok = all(_exhaustive_channel_grid_equiv(K) for K in (1, 2, 3))
    all_ok &= ok
    lines.append(_fmt(ok, "channel path == grid reachability, exhaustive K <= 3"))

    K = 12
    r = 0.05
    w = (r / 4.0) * (4 * K + 1) * 0.999
    spec = ch.make_spec(np.array([0.2, 0.5]), np.array([0.2 + w, 0.5]), r,
                        0.5 * ch.max_h(2, r))
    boxes = ch.reachable_boxes(spec)
    ok = True
    for i in range(1000):
        p = (0.3, 0.5, 0.7, 0.9)[i % 4]
        keep = rng.random(len(boxes)) < p
        occ = ch.ChannelOccupancy(
            spec=spec, occupied=frozenset(b for b, kp in zip(boxes, keep) if kp))
        if ch.channel_path_exists(occ) != perc.grid_reachable(ch.to_grid(occ)):
            ok = False
            break
    all_ok &= ok
    lines.append(_fmt(ok, "channel path == grid reachability, 1000 random occupancies K=12"))

    return bool(all_ok), lines


def suite_schedule(seed: int = 1) -> tuple[bool, list[str]]:
    lines = []
    all_ok = True
    rng = generator(seed, STREAM_VERIFY, 2)

    ok = True
    for _ in range(10_000):
        r = float(rng.uniform(1e-4, 0.9))
        w = float(rng.uniform(r * (1 + 1e-9), 1.8))
        K, l = channel_discretization(w, r)
        if not (r / 20.0 < l <= r / 4.0):
            ok = False
            break
        if K > 1 and w / (4 * (K - 1) + 1) <= r / 4.0:
            ok = False  # K not minimal
            break
    all_ok &= ok
    lines.append(_fmt(ok, "discretization: r/20 < l <= r/4 and K minimal (1e4 fuzz)"))

    ok = True
    params = OracleParams(mode="paper")
    for d in range(2, 9):
        cp = c_prime(d, params)
        need = max(max(math.log(2.0 / params.q0) / i,
                       math.log(params.c) / i + 2.0 ** (3 - d)) for i in range(1, 2000))
        if not (cp >= need - 1e-12 and cp <= need + 1e-9):
            ok = False
    all_ok &= ok
    lines.append(_fmt(ok, "paper-mode c' matches the minimality scan for d in 2..8"))

    ok = True
    hcheck = True
    for _ in range(300):
        d = int(rng.integers(2, 5))
        n = int(rng.integers(10 ** 3, 10 ** 6))
        r = float(rng.uniform(0.02, 0.4))
        w = float(rng.uniform(r * 1.01, 1.7))
        mode = "paper" if rng.random() < 0.5 else "practical"
        sched = make_schedule(n, d, r, w, OracleParams(mode=mode, kappa=float(rng.uniform(0.3, 3))))
        hmax = h_limit(d, r)
        if sched.i_max > 0:
            for i in (1, max(1, sched.i_max // 2), sched.i_max):
                a = w_ub(sched, i)
                b = w_ub_from_h(sched, i)
                if abs(a - b) > 1e-12 * max(a, b):
                    ok = False
                ex = stage_empty_box_exponent(sched, i)
                if abs(math.exp(-ex) - math.exp(-sched.c_prime * i)) > 1e-9:
                    ok = False
            if sched.h(sched.i_max) > hmax:
                hcheck = False
        if sched.h(sched.i_max + 1) <= hmax:
            hcheck = False
    all_ok &= ok
    lines.append(_fmt(ok, "W_ub explicit form == h-form (1e-12) and "
                          "exp(-n l h_i^(d-1)) == exp(-c' i) (1e-9), 300 schedules"))
    all_ok &= hcheck
    lines.append(_fmt(hcheck, "h(i_max) within the jump-safe limit, h(i_max+1) beyond it"))

    return bool(all_ok), lines


def _axis_aligned_box_volume(frame, lo, hi) -> float:
    """Volume of the (axis-aligned) global image of a local box clipped to
    the unit cube; valid when the frame basis is a signed permutation."""
    corners_local = np.array(list(itertools.product(*zip(lo, hi))))
    corners = frame.from_local(corners_local)
    lo_g = np.clip(corners.min(axis=0), 0.0, 1.0)
    hi_g = np.clip(corners.max(axis=0), 0.0, 1.0)
    return float(np.prod(np.maximum(hi_g - lo_g, 0.0)))


def count_lemma_ensemble(n: int, r: float, w: float, instances: int, seed: int,
                         params: OracleParams | None = None):
    """Per-stage |V_i| and |E_i| sample means over random d=2 instances with
    the fixed axis-aligned query segment (s, t) centered in the cube.

    Returns (schedule, frame, list of per-stage dicts with keys
    i, mean_nv, mean_ne, expected_nv, sigma_nv, vol)."""
    from . import kernels

    d = 2
    params = params or OracleParams()
    s = np.array([0.5 - w / 2.0, 0.5])
    t = np.array([0.5 + w / 2.0, 0.5])
    frame = build_frame(s, t)
    sched = make_schedule(n, d, r, w, params)
    from .schedule import bounding_box

    boxes = [bounding_box(sched, frame, i) for i in range(1, sched.i_max + 1)]
    vols = [_axis_aligned_box_volume(frame, b.lo, b.hi) for b in boxes]
    sum_nv = np.zeros(len(boxes))
    sum_ne = np.zeros(len(boxes))
    for j in range(instances):
        inst = gen_instance(n, d, r, seed=seed + j)
        full_count = None
        local = frame.to_local(inst.points)
        for bi, box in enumerate(boxes):
            inside = np.all((local >= box.lo) & (local <= box.hi), axis=1)
            nv = int(np.count_nonzero(inside))
            sum_nv[bi] += nv
            if box.covers_unit_cube():
                if full_count is None:
                    grid = kernels.build_cube_grid(inst.points, r)
                    full_count = kernels.count_edges(grid)
                sum_ne[bi] += full_count
            else:
                sub = inst.points[inside]
                grid = kernels.build_cube_grid(sub, r)
                sum_ne[bi] += kernels.count_edges(grid)
    out = []
    for bi in range(len(boxes)):
        v = vols[bi]
        out.append({
            "i": bi + 1,
            "mean_nv": sum_nv[bi] / instances,
            "mean_ne": sum_ne[bi] / instances,
            "expected_nv": n * v,
            "sigma_nv": math.sqrt(max(n * v * (1.0 - v), 0.0)),
            "vol": v,
            "R": 0.5 * math.sqrt(max(w_ub(sched, bi + 1) ** 2 - w * w, 0.0)),
        })
    return sched, frame, out


def suite_counts(seed: int = 1, instances: int = 30, n: int = 20_000,
                 r: float = 0.1, w: float = 0.5) -> tuple[bool, list[str]]:
    lines = []
    all_ok = True
    sched, frame, rows = count_lemma_ensemble(n, r, w, instances, seed)
    lines.append(f"     schedule: K={sched.K} l={sched.l:.6g} i_max={sched.i_max}")

    ok = True
    worst = 0.0
    for row in rows:
        tol = 4.0 * row["sigma_nv"] / math.sqrt(instances)
        dev = abs(row["mean_nv"] - row["expected_nv"])
        if row["sigma_nv"] == 0.0:
            if dev != 0.0:
                ok = False
        else:
            worst = max(worst, dev / max(tol, 1e-300))
            if dev > tol:
                ok = False
    all_ok &= ok
    lines.append(_fmt(ok, f"|V_i| matches n*vol(BB(i) cap cube) within 4 sigma "
                          f"of the mean (worst ratio {worst:.2f})"))

    # Sound per-vertex degree band: a vertex's in-box neighbors live in the
    # intersection of its r-ball with a 2r x 2R slab, so
    # E|E_i|/E|V_i| <= n/2 * min(pi r^2, 4 r R) up to sampling noise.
    ok = True
    for row in rows:
        if row["mean_nv"] == 0:
            continue
        band = 0.5 * n * min(math.pi * r * r, 4.0 * r * row["R"])
        ratio = row["mean_ne"] / row["mean_nv"]
        if ratio > band * 1.02 + 4.0:
            ok = False
    all_ok &= ok
    lines.append(_fmt(ok, "|E_i|/|V_i| within the ball-or-slab degree band every stage"))

    return bool(all_ok), lines


SUITES = {
    "percolation": suite_percolation,
    "channel": suite_channel,
    "schedule": suite_schedule,
    "counts": suite_counts,
}
