"""Numba-jitted hot kernels (d in {2, 3}).

All shortest-path kernels work in the position space of cube-sorted point
arrays, so every neighbor enumeration touches at most 3^d contiguous runs.
Infinity is represented by the finite sentinel INF (fastmath forbids real
inf in comparisons); wrappers translate back to numpy inf.

Tie-breaking is lexicographic on (key, position): lower position wins on
equal keys, which makes settled orders and predecessor trees deterministic.
"""

import numpy as np
from numba import njit

INF = 1.0e30

# mode values for the dijkstra kernels
MODE_FULL = 0      # exhaustive: settle the whole reachable component
MODE_GOAL = 1      # stop once dst is settled
MODE_BOUNDED = 2   # stop once dst is settled or the next key exceeds bound


@njit(cache=True, inline="always")
def _heap_up(hk, hv, i):
    while i > 0:
        p = (i - 1) >> 1
        if hk[i] < hk[p] or (hk[i] == hk[p] and hv[i] < hv[p]):
            hk[i], hk[p] = hk[p], hk[i]
            hv[i], hv[p] = hv[p], hv[i]
            i = p
        else:
            break


@njit(cache=True, inline="always")
def _heap_down(hk, hv, hn):
    i = 0
    while True:
        l = 2 * i + 1
        if l >= hn:
            break
        if l + 1 < hn and (hk[l + 1] < hk[l] or (hk[l + 1] == hk[l] and hv[l + 1] < hv[l])):
            l += 1
        if hk[l] < hk[i] or (hk[l] == hk[i] and hv[l] < hv[i]):
            hk[i], hk[l] = hk[l], hk[i]
            hv[i], hv[l] = hv[l], hv[i]
            i = l
        else:
            break


@njit(cache=True, fastmath=True)
def dijkstra2(px, py, starts, nc, r, src, dst, mode, bound):
    """Dijkstra over the implicit unit-disk graph of cube-sorted 2-d points.

    Returns (dist, pred, settled, relaxed, reached). ``relaxed`` counts true
    edges examined from settled vertices (both directions over a run).
    """
    n = px.shape[0]
    r2 = r * r
    dist = np.full(n, INF)
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.uint8)
    buf = np.empty(n, dtype=np.int64)
    cap = 1024
    hk = np.empty(cap, dtype=np.float64)
    hv = np.empty(cap, dtype=np.int64)
    dist[src] = 0.0
    hk[0] = 0.0
    hv[0] = src
    hn = 1
    settled = 0
    relaxed = 0
    reached = False
    while hn > 0:
        key = hk[0]
        u = hv[0]
        hn -= 1
        hk[0] = hk[hn]
        hv[0] = hv[hn]
        _heap_down(hk, hv, hn)
        if done[u] == 1:
            continue
        if mode == MODE_BOUNDED and key > bound:
            break
        done[u] = 1
        settled += 1
        if u == dst:
            reached = True
            if mode != MODE_FULL:
                break
        du = key
        ux = px[u]
        uy = py[u]
        cx = int(ux / r)
        if cx >= nc:
            cx = nc - 1
        cy = int(uy / r)
        if cy >= nc:
            cy = nc - 1
        x0 = cx - 1 if cx > 0 else 0
        x1 = cx + 1 if cx + 1 < nc else nc - 1
        y0 = cy - 1 if cy > 0 else 0
        y1 = cy + 1 if cy + 1 < nc else nc - 1
        c = 0
        for gx in range(x0, x1 + 1):
            a = starts[gx * nc + y0]
            b = starts[gx * nc + y1 + 1]
            for j in range(a, b):
                dx = px[j] - ux
                dy = py[j] - uy
                buf[c] = j
                c += 1 if dx * dx + dy * dy <= r2 else 0
        for kk in range(c):
            j = buf[kk]
            if j == u:
                continue
            relaxed += 1
            if done[j] == 1:
                continue
            dx = px[j] - ux
            dy = py[j] - uy
            nd = du + np.sqrt(dx * dx + dy * dy)
            if nd < dist[j]:
                dist[j] = nd
                pred[j] = u
                if hn >= cap:
                    ncap = cap * 2
                    nk = np.empty(ncap, dtype=np.float64)
                    nv = np.empty(ncap, dtype=np.int64)
                    nk[:hn] = hk[:hn]
                    nv[:hn] = hv[:hn]
                    hk = nk
                    hv = nv
                    cap = ncap
                hk[hn] = nd
                hv[hn] = j
                _heap_up(hk, hv, hn)
                hn += 1
    return dist, pred, settled, relaxed, reached


@njit(cache=True, fastmath=True)
def dijkstra3(px, py, pz, starts, nc, r, src, dst, mode, bound):
    n = px.shape[0]
    r2 = r * r
    dist = np.full(n, INF)
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.uint8)
    buf = np.empty(n, dtype=np.int64)
    cap = 1024
    hk = np.empty(cap, dtype=np.float64)
    hv = np.empty(cap, dtype=np.int64)
    dist[src] = 0.0
    hk[0] = 0.0
    hv[0] = src
    hn = 1
    settled = 0
    relaxed = 0
    reached = False
    while hn > 0:
        key = hk[0]
        u = hv[0]
        hn -= 1
        hk[0] = hk[hn]
        hv[0] = hv[hn]
        _heap_down(hk, hv, hn)
        if done[u] == 1:
            continue
        if mode == MODE_BOUNDED and key > bound:
            break
        done[u] = 1
        settled += 1
        if u == dst:
            reached = True
            if mode != MODE_FULL:
                break
        du = key
        ux = px[u]
        uy = py[u]
        uz = pz[u]
        cx = min(int(ux / r), nc - 1)
        cy = min(int(uy / r), nc - 1)
        cz = min(int(uz / r), nc - 1)
        x0 = max(cx - 1, 0)
        x1 = min(cx + 1, nc - 1)
        y0 = max(cy - 1, 0)
        y1 = min(cy + 1, nc - 1)
        z0 = max(cz - 1, 0)
        z1 = min(cz + 1, nc - 1)
        c = 0
        for gx in range(x0, x1 + 1):
            for gy in range(y0, y1 + 1):
                base = (gx * nc + gy) * nc
                a = starts[base + z0]
                b = starts[base + z1 + 1]
                for j in range(a, b):
                    dx = px[j] - ux
                    dy = py[j] - uy
                    dz = pz[j] - uz
                    buf[c] = j
                    c += 1 if dx * dx + dy * dy + dz * dz <= r2 else 0
        for kk in range(c):
            j = buf[kk]
            if j == u:
                continue
            relaxed += 1
            if done[j] == 1:
                continue
            dx = px[j] - ux
            dy = py[j] - uy
            dz = pz[j] - uz
            nd = du + np.sqrt(dx * dx + dy * dy + dz * dz)
            if nd < dist[j]:
                dist[j] = nd
                pred[j] = u
                if hn >= cap:
                    ncap = cap * 2
                    nk = np.empty(ncap, dtype=np.float64)
                    nv = np.empty(ncap, dtype=np.int64)
                    nk[:hn] = hk[:hn]
                    nv[:hn] = hv[:hn]
                    hk = nk
                    hv = nv
                    cap = ncap
                hk[hn] = nd
                hv[hn] = j
                _heap_up(hk, hv, hn)
                hn += 1
    return dist, pred, settled, relaxed, reached


@njit(cache=True, fastmath=True)
def astar2(px, py, starts, nc, r, src, dst):
    """A* with the Euclidean heuristic; dist holds g-values."""
    n = px.shape[0]
    r2 = r * r
    dist = np.full(n, INF)
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.uint8)
    buf = np.empty(n, dtype=np.int64)
    cap = 1024
    hk = np.empty(cap, dtype=np.float64)
    hv = np.empty(cap, dtype=np.int64)
    tx = px[dst]
    ty = py[dst]
    dist[src] = 0.0
    dx0 = px[src] - tx
    dy0 = py[src] - ty
    hk[0] = np.sqrt(dx0 * dx0 + dy0 * dy0)
    hv[0] = src
    hn = 1
    settled = 0
    relaxed = 0
    reached = False
    while hn > 0:
        u = hv[0]
        hn -= 1
        hk[0] = hk[hn]
        hv[0] = hv[hn]
        _heap_down(hk, hv, hn)
        if done[u] == 1:
            continue
        done[u] = 1
        settled += 1
        if u == dst:
            reached = True
            break
        du = dist[u]
        ux = px[u]
        uy = py[u]
        cx = min(int(ux / r), nc - 1)
        cy = min(int(uy / r), nc - 1)
        x0 = max(cx - 1, 0)
        x1 = min(cx + 1, nc - 1)
        y0 = max(cy - 1, 0)
        y1 = min(cy + 1, nc - 1)
        c = 0
        for gx in range(x0, x1 + 1):
            a = starts[gx * nc + y0]
            b = starts[gx * nc + y1 + 1]
            for j in range(a, b):
                dx = px[j] - ux
                dy = py[j] - uy
                buf[c] = j
                c += 1 if dx * dx + dy * dy <= r2 else 0
        for kk in range(c):
            j = buf[kk]
            if j == u:
                continue
            relaxed += 1
            if done[j] == 1:
                continue
            dx = px[j] - ux
            dy = py[j] - uy
            ng = du + np.sqrt(dx * dx + dy * dy)
            if ng < dist[j]:
                dist[j] = ng
                pred[j] = u
                hx = px[j] - tx
                hy = py[j] - ty
                key = ng + np.sqrt(hx * hx + hy * hy)
                if hn >= cap:
                    ncap = cap * 2
                    nk = np.empty(ncap, dtype=np.float64)
                    nv = np.empty(ncap, dtype=np.int64)
                    nk[:hn] = hk[:hn]
                    nv[:hn] = hv[:hn]
                    hk = nk
                    hv = nv
                    cap = ncap
                hk[hn] = key
                hv[hn] = j
                _heap_up(hk, hv, hn)
                hn += 1
    return dist, pred, settled, relaxed, reached


@njit(cache=True, fastmath=True)
def astar3(px, py, pz, starts, nc, r, src, dst):
    n = px.shape[0]
    r2 = r * r
    dist = np.full(n, INF)
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.uint8)
    buf = np.empty(n, dtype=np.int64)
    cap = 1024
    hk = np.empty(cap, dtype=np.float64)
    hv = np.empty(cap, dtype=np.int64)
    tx = px[dst]
    ty = py[dst]
    tz = pz[dst]
    dist[src] = 0.0
    dx0 = px[src] - tx
    dy0 = py[src] - ty
    dz0 = pz[src] - tz
    hk[0] = np.sqrt(dx0 * dx0 + dy0 * dy0 + dz0 * dz0)
    hv[0] = src
    hn = 1
    settled = 0
    relaxed = 0
    reached = False
    while hn > 0:
        u = hv[0]
        hn -= 1
        hk[0] = hk[hn]
        hv[0] = hv[hn]
        _heap_down(hk, hv, hn)
        if done[u] == 1:
            continue
        done[u] = 1
        settled += 1
        if u == dst:
            reached = True
            break
        du = dist[u]
        ux = px[u]
        uy = py[u]
        uz = pz[u]
        cx = min(int(ux / r), nc - 1)
        cy = min(int(uy / r), nc - 1)
        cz = min(int(uz / r), nc - 1)
        x0 = max(cx - 1, 0)
        x1 = min(cx + 1, nc - 1)
        y0 = max(cy - 1, 0)
        y1 = min(cy + 1, nc - 1)
        z0 = max(cz - 1, 0)
        z1 = min(cz + 1, nc - 1)
        c = 0
        for gx in range(x0, x1 + 1):
            for gy in range(y0, y1 + 1):
                base = (gx * nc + gy) * nc
                a = starts[base + z0]
                b = starts[base + z1 + 1]
                for j in range(a, b):
                    dx = px[j] - ux
                    dy = py[j] - uy
                    dz = pz[j] - uz
                    buf[c] = j
                    c += 1 if dx * dx + dy * dy + dz * dz <= r2 else 0
        for kk in range(c):
            j = buf[kk]
            if j == u:
                continue
            relaxed += 1
            if done[j] == 1:
                continue
            dx = px[j] - ux
            dy = py[j] - uy
            dz = pz[j] - uz
            ng = du + np.sqrt(dx * dx + dy * dy + dz * dz)
            if ng < dist[j]:
                dist[j] = ng
                pred[j] = u
                hx = px[j] - tx
                hy = py[j] - ty
                hz = pz[j] - tz
                key = ng + np.sqrt(hx * hx + hy * hy + hz * hz)
                if hn >= cap:
                    ncap = cap * 2
                    nk = np.empty(ncap, dtype=np.float64)
                    nv = np.empty(ncap, dtype=np.int64)
                    nk[:hn] = hk[:hn]
                    nv[:hn] = hv[:hn]
                    hk = nk
                    hv = nv
                    cap = ncap
                hk[hn] = key
                hv[hn] = j
                _heap_up(hk, hv, hn)
                hn += 1
    return dist, pred, settled, relaxed, reached


@njit(cache=True, fastmath=True)
def count_edges2(px, py, starts, nc, r):
    """Number of undirected edges among cube-sorted 2-d points."""
    n = px.shape[0]
    r2 = r * r
    total = 0
    for u in range(n):
        ux = px[u]
        uy = py[u]
        cx = min(int(ux / r), nc - 1)
        cy = min(int(uy / r), nc - 1)
        x0 = max(cx - 1, 0)
        x1 = min(cx + 1, nc - 1)
        y0 = max(cy - 1, 0)
        y1 = min(cy + 1, nc - 1)
        for gx in range(x0, x1 + 1):
            a = starts[gx * nc + y0]
            b = starts[gx * nc + y1 + 1]
            for j in range(a, b):
                dx = px[j] - ux
                dy = py[j] - uy
                if dx * dx + dy * dy <= r2 and j > u:
                    total += 1
    return total


@njit(cache=True, fastmath=True)
def count_edges3(px, py, pz, starts, nc, r):
    n = px.shape[0]
    r2 = r * r
    total = 0
    for u in range(n):
        ux = px[u]
        uy = py[u]
        uz = pz[u]
        cx = min(int(ux / r), nc - 1)
        cy = min(int(uy / r), nc - 1)
        cz = min(int(uz / r), nc - 1)
        x0 = max(cx - 1, 0)
        x1 = min(cx + 1, nc - 1)
        y0 = max(cy - 1, 0)
        y1 = min(cy + 1, nc - 1)
        z0 = max(cz - 1, 0)
        z1 = min(cz + 1, nc - 1)
        for gx in range(x0, x1 + 1):
            for gy in range(y0, y1 + 1):
                base = (gx * nc + gy) * nc
                a = starts[base + z0]
                b = starts[base + z1 + 1]
                for j in range(a, b):
                    dx = px[j] - ux
                    dy = py[j] - uy
                    dz = pz[j] - uz
                    if dx * dx + dy * dy + dz * dz <= r2 and j > u:
                        total += 1
    return total


@njit(cache=True, fastmath=True)
def edge_pairs2(px, py, starts, nc, r, us, vs, ws):
    """Fill undirected edge arrays (u < v positions); returns the count."""
    n = px.shape[0]
    r2 = r * r
    m = 0
    for u in range(n):
        ux = px[u]
        uy = py[u]
        cx = min(int(ux / r), nc - 1)
        cy = min(int(uy / r), nc - 1)
        x0 = max(cx - 1, 0)
        x1 = min(cx + 1, nc - 1)
        y0 = max(cy - 1, 0)
        y1 = min(cy + 1, nc - 1)
        for gx in range(x0, x1 + 1):
            a = starts[gx * nc + y0]
            b = starts[gx * nc + y1 + 1]
            for j in range(a, b):
                dx = px[j] - ux
                dy = py[j] - uy
                dd = dx * dx + dy * dy
                if dd <= r2 and j > u:
                    us[m] = u
                    vs[m] = j
                    ws[m] = np.sqrt(dd)
                    m += 1
    return m


@njit(cache=True, fastmath=True)
def edge_pairs3(px, py, pz, starts, nc, r, us, vs, ws):
    n = px.shape[0]
    r2 = r * r
    m = 0
    for u in range(n):
        ux = px[u]
        uy = py[u]
        uz = pz[u]
        cx = min(int(ux / r), nc - 1)
        cy = min(int(uy / r), nc - 1)
        cz = min(int(uz / r), nc - 1)
        x0 = max(cx - 1, 0)
        x1 = min(cx + 1, nc - 1)
        y0 = max(cy - 1, 0)
        y1 = min(cy + 1, nc - 1)
        z0 = max(cz - 1, 0)
        z1 = min(cz + 1, nc - 1)
        for gx in range(x0, x1 + 1):
            for gy in range(y0, y1 + 1):
                base = (gx * nc + gy) * nc
                a = starts[base + z0]
                b = starts[base + z1 + 1]
                for j in range(a, b):
                    dx = px[j] - ux
                    dy = py[j] - uy
                    dz = pz[j] - uz
                    dd = dx * dx + dy * dy + dz * dz
                    if dd <= r2 and j > u:
                        us[m] = u
                        vs[m] = j
                        ws[m] = np.sqrt(dd)
                        m += 1
    return m


@njit(cache=True)
def cover_bfs2(k, start, ox, oy, b00, b01, b10, b11, lo0, lo1, hi0, hi1, margin):
    """BFS over the k x k cell grid from ``start`` (flat id), accepting cells
    whose center is within ``margin`` of the box on every local axis."""
    visited = np.zeros(k * k, dtype=np.uint8)
    stack = np.empty(k * k, dtype=np.int64)
    out = np.empty(k * k, dtype=np.int64)
    inv = 1.0 / k
    top = 0
    cnt = 0
    stack[top] = start
    top += 1
    visited[start] = 1
    while top > 0:
        top -= 1
        cell = stack[top]
        ix = cell // k
        iy = cell % k
        gx = (ix + 0.5) * inv - ox
        gy = (iy + 0.5) * inv - oy
        l0 = b00 * gx + b01 * gy
        l1 = b10 * gx + b11 * gy
        ok = True
        if l0 < lo0 - margin or l0 > hi0 + margin:
            ok = False
        elif l1 < lo1 - margin or l1 > hi1 + margin:
            ok = False
        if not ok and cell != start:
            continue
        out[cnt] = cell
        cnt += 1
        for dx in range(-1, 2):
            nx = ix + dx
            if nx < 0 or nx >= k:
                continue
            for dy in range(-1, 2):
                ny = iy + dy
                if ny < 0 or ny >= k:
                    continue
                ncell = nx * k + ny
                if visited[ncell] == 0:
                    visited[ncell] = 1
                    stack[top] = ncell
                    top += 1
    return out[:cnt]


@njit(cache=True)
def cover_bfs3(k, start, ox, oy, oz, basis, lo, hi, margin):
    visited = np.zeros(k * k * k, dtype=np.uint8)
    stack = np.empty(k * k * k, dtype=np.int64)
    out = np.empty(k * k * k, dtype=np.int64)
    inv = 1.0 / k
    top = 0
    cnt = 0
    stack[top] = start
    top += 1
    visited[start] = 1
    while top > 0:
        top -= 1
        cell = stack[top]
        ix = cell // (k * k)
        iy = (cell // k) % k
        iz = cell % k
        gx = (ix + 0.5) * inv - ox
        gy = (iy + 0.5) * inv - oy
        gz = (iz + 0.5) * inv - oz
        ok = True
        for a in range(3):
            la = basis[a, 0] * gx + basis[a, 1] * gy + basis[a, 2] * gz
            if la < lo[a] - margin or la > hi[a] + margin:
                ok = False
                break
        if not ok and cell != start:
            continue
        out[cnt] = cell
        cnt += 1
        for dx in range(-1, 2):
            nx = ix + dx
            if nx < 0 or nx >= k:
                continue
            for dy in range(-1, 2):
                ny = iy + dy
                if ny < 0 or ny >= k:
                    continue
                for dz in range(-1, 2):
                    nz = iz + dz
                    if nz < 0 or nz >= k:
                        continue
                    ncell = (nx * k + ny) * k + nz
                    if visited[ncell] == 0:
                        visited[ncell] = 1
                        stack[top] = ncell
                        top += 1
    return out[:cnt]


@njit(cache=True, inline="always")
def _uf_find(parent, a):
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


@njit(cache=True, fastmath=True)
def components2(px, py, starts, nc, side, r):
    """Union-find connectivity labels over cubes of side <= r/sqrt(2): points
    sharing a cube are pairwise adjacent; cube pairs get one witness edge."""
    n = px.shape[0]
    r2 = r * r
    parent = np.arange(n)
    for c in range(nc * nc):
        a, b = starts[c], starts[c + 1]
        for j in range(a + 1, b):
            parent[_uf_find(parent, j)] = _uf_find(parent, a)
    reach = int(np.ceil(r / side))
    for cx in range(nc):
        for cy in range(nc):
            c = cx * nc + cy
            a0, b0 = starts[c], starts[c + 1]
            if a0 == b0:
                continue
            for dx in range(0, reach + 1):
                gx = cx + dx
                if gx >= nc:
                    continue
                mdx = max(dx - 1, 0) * side
                for dy in range(-reach, reach + 1):
                    if dx == 0 and dy <= 0:
                        continue
                    gy = cy + dy
                    if gy < 0 or gy >= nc:
                        continue
                    mdy = max(abs(dy) - 1, 0) * side
                    if mdx * mdx + mdy * mdy > r2:
                        continue
                    c2 = gx * nc + gy
                    a1, b1 = starts[c2], starts[c2 + 1]
                    if a1 == b1:
                        continue
                    if _uf_find(parent, a0) == _uf_find(parent, a1):
                        continue
                    found = False
                    for i in range(a0, b0):
                        xi = px[i]
                        yi = py[i]
                        for j in range(a1, b1):
                            ddx = px[j] - xi
                            ddy = py[j] - yi
                            if ddx * ddx + ddy * ddy <= r2:
                                parent[_uf_find(parent, j)] = _uf_find(parent, i)
                                found = True
                                break
                        if found:
                            break
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        out[i] = _uf_find(parent, i)
    return out


@njit(cache=True, fastmath=True)
def components3(px, py, pz, starts, nc, side, r):
    n = px.shape[0]
    r2 = r * r
    parent = np.arange(n)
    for c in range(nc * nc * nc):
        a, b = starts[c], starts[c + 1]
        for j in range(a + 1, b):
            parent[_uf_find(parent, j)] = _uf_find(parent, a)
    reach = int(np.ceil(r / side))
    for cx in range(nc):
        for cy in range(nc):
            for cz in range(nc):
                c = (cx * nc + cy) * nc + cz
                a0, b0 = starts[c], starts[c + 1]
                if a0 == b0:
                    continue
                for dx in range(0, reach + 1):
                    gx = cx + dx
                    if gx >= nc:
                        continue
                    mdx = max(dx - 1, 0) * side
                    for dy in range(-reach, reach + 1):
                        gy = cy + dy
                        if gy < 0 or gy >= nc:
                            continue
                        mdy = max(abs(dy) - 1, 0) * side
                        for dz in range(-reach, reach + 1):
                            if dx == 0 and (dy < 0 or (dy == 0 and dz <= 0)):
                                continue
                            gz = cz + dz
                            if gz < 0 or gz >= nc:
                                continue
                            mdz = max(abs(dz) - 1, 0) * side
                            if mdx * mdx + mdy * mdy + mdz * mdz > r2:
                                continue
                            c2 = (gx * nc + gy) * nc + gz
                            a1, b1 = starts[c2], starts[c2 + 1]
                            if a1 == b1:
                                continue
                            if _uf_find(parent, a0) == _uf_find(parent, a1):
                                continue
                            found = False
                            for i in range(a0, b0):
                                xi = px[i]
                                yi = py[i]
                                zi = pz[i]
                                for j in range(a1, b1):
                                    ddx = px[j] - xi
                                    ddy = py[j] - yi
                                    ddz = pz[j] - zi
                                    if ddx * ddx + ddy * ddy + ddz * ddz <= r2:
                                        parent[_uf_find(parent, j)] = _uf_find(parent, i)
                                        found = True
                                        break
                                if found:
                                    break
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        out[i] = _uf_find(parent, i)
    return out


@njit(cache=True)
def gather_runs(starts, cells, out):
    """Concatenate snapshot positions of the given cells; returns the count."""
    c = 0
    for i in range(cells.shape[0]):
        cell = cells[i]
        a = starts[cell]
        b = starts[cell + 1]
        for j in range(a, b):
            out[c] = j
            c += 1
    return c
