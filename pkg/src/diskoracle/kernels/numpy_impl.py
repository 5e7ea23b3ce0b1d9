"""Pure numpy/heapq fallback kernels (any d >= 2).

Semantics mirror numba_impl exactly: same neighbor-run enumeration over
cube-sorted points, same (key, position) tie-breaking, same mode behavior,
same relaxed-edge counting. Slower by orders of magnitude; intended for
environments without numba, debugging, and d >= 4.
"""

import heapq
import itertools

import numpy as np

from .numba_impl import INF, MODE_BOUNDED, MODE_FULL


def _cell_of(coord_row, nc, r):
    idx = np.minimum((coord_row / r).astype(np.int64), nc - 1)
    return idx


def _flat(idx, nc):
    f = 0
    for v in idx:
        f = f * nc + int(v)
    return f


def _neighbor_runs(cell_idx, nc, d):
    """(start_flat, end_flat) pairs covering the 3^d neighborhood as
    contiguous runs along the last axis."""
    lead_ranges = []
    for a in range(d - 1):
        c = int(cell_idx[a])
        lead_ranges.append(range(max(c - 1, 0), min(c + 1, nc - 1) + 1))
    z = int(cell_idx[d - 1])
    z0 = max(z - 1, 0)
    z1 = min(z + 1, nc - 1)
    runs = []
    for lead in itertools.product(*lead_ranges):
        base = 0
        for v in lead:
            base = base * nc + v
        base *= nc
        runs.append((base + z0, base + z1 + 1))
    return runs


def dijkstra_nd(coords, starts, nc, r, src, dst, mode, bound):
    n, d = coords.shape
    r2 = r * r
    dist = np.full(n, INF)
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    heap = [(0.0, src)]
    dist[src] = 0.0
    settled = 0
    relaxed = 0
    reached = False
    while heap:
        key, u = heapq.heappop(heap)
        if done[u]:
            continue
        if mode == MODE_BOUNDED and key > bound:
            break
        done[u] = True
        settled += 1
        if u == dst:
            reached = True
            if mode != MODE_FULL:
                break
        cu = coords[u]
        for a, b in _neighbor_runs(_cell_of(cu, nc, r), nc, d):
            ra = starts[a]
            rb = starts[b]
            if ra == rb:
                continue
            delta = coords[ra:rb] - cu
            dd = np.einsum("ij,ij->i", delta, delta)
            for off in np.nonzero(dd <= r2)[0]:
                j = ra + int(off)
                if j == u:
                    continue
                relaxed += 1
                if done[j]:
                    continue
                nd_ = key + float(np.sqrt(dd[off]))
                if nd_ < dist[j]:
                    dist[j] = nd_
                    pred[j] = u
                    heapq.heappush(heap, (nd_, j))
    return dist, pred, settled, relaxed, reached


def astar_nd(coords, starts, nc, r, src, dst):
    n, d = coords.shape
    r2 = r * r
    dist = np.full(n, INF)
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    target = coords[dst]
    h0 = float(np.sqrt(np.sum((coords[src] - target) ** 2)))
    heap = [(h0, src)]
    dist[src] = 0.0
    settled = 0
    relaxed = 0
    reached = False
    while heap:
        _, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        settled += 1
        if u == dst:
            reached = True
            break
        du = float(dist[u])
        cu = coords[u]
        for a, b in _neighbor_runs(_cell_of(cu, nc, r), nc, d):
            ra = starts[a]
            rb = starts[b]
            if ra == rb:
                continue
            delta = coords[ra:rb] - cu
            dd = np.einsum("ij,ij->i", delta, delta)
            for off in np.nonzero(dd <= r2)[0]:
                j = ra + int(off)
                if j == u:
                    continue
                relaxed += 1
                if done[j]:
                    continue
                ng = du + float(np.sqrt(dd[off]))
                if ng < dist[j]:
                    dist[j] = ng
                    pred[j] = u
                    h = float(np.sqrt(np.sum((coords[j] - target) ** 2)))
                    heapq.heappush(heap, (ng + h, j))
    return dist, pred, settled, relaxed, reached


def count_edges_nd(coords, starts, nc, r):
    n, d = coords.shape
    r2 = r * r
    total = 0
    for u in range(n):
        cu = coords[u]
        for a, b in _neighbor_runs(_cell_of(cu, nc, r), nc, d):
            ra = starts[a]
            rb = starts[b]
            if ra == rb:
                continue
            delta = coords[ra:rb] - cu
            dd = np.einsum("ij,ij->i", delta, delta)
            js = np.arange(ra, rb)
            total += int(np.count_nonzero((dd <= r2) & (js > u)))
    return total


def edge_pairs_nd(coords, starts, nc, r):
    n, d = coords.shape
    r2 = r * r
    us, vs, ws = [], [], []
    for u in range(n):
        cu = coords[u]
        for a, b in _neighbor_runs(_cell_of(cu, nc, r), nc, d):
            ra = starts[a]
            rb = starts[b]
            if ra == rb:
                continue
            delta = coords[ra:rb] - cu
            dd = np.einsum("ij,ij->i", delta, delta)
            js = np.arange(ra, rb)
            sel = (dd <= r2) & (js > u)
            if sel.any():
                us.append(np.full(int(sel.sum()), u, dtype=np.int64))
                vs.append(js[sel])
                ws.append(np.sqrt(dd[sel]))
    if not us:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), np.empty(0, dtype=np.float64)
    return np.concatenate(us), np.concatenate(vs), np.concatenate(ws)


def components_nd(coords, starts, nc, side, r):
    """Union-find connectivity labels; same contract as the numba kernels."""
    n, d = coords.shape
    r2 = r * r
    parent = np.arange(n)

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    ncells = nc ** d
    for c in range(ncells):
        a, b = int(starts[c]), int(starts[c + 1])
        for j in range(a + 1, b):
            parent[find(j)] = find(a)
    reach = int(np.ceil(r / side))
    offsets = []
    for off in itertools.product(range(-reach, reach + 1), repeat=d):
        if off <= tuple([0] * d):
            continue
        md = sum((max(abs(o) - 1, 0) * side) ** 2 for o in off)
        if md <= r2:
            offsets.append(off)
    strides = [nc ** (d - 1 - a) for a in range(d)]
    for c in range(ncells):
        a0, b0 = int(starts[c]), int(starts[c + 1])
        if a0 == b0:
            continue
        idx = []
        rem = c
        for s in strides:
            idx.append(rem // s)
            rem %= s
        for off in offsets:
            tgt = 0
            ok = True
            for axis in range(d):
                v = idx[axis] + off[axis]
                if v < 0 or v >= nc:
                    ok = False
                    break
                tgt = tgt * nc + v
            if not ok:
                continue
            a1, b1 = int(starts[tgt]), int(starts[tgt + 1])
            if a1 == b1 or find(a0) == find(a1):
                continue
            delta = coords[a0:b0, None, :] - coords[None, a1:b1, :]
            dd = (delta ** 2).sum(axis=2)
            hits = np.argwhere(dd <= r2)
            if hits.size:
                i, j = hits[0]
                parent[find(a1 + int(j))] = find(a0 + int(i))
    return np.array([find(i) for i in range(n)], dtype=np.int64)


def cover_bfs_nd(k, d, start, origin, basis, lo, hi, margin):
    """Python BFS over the k^d cell grid; accepts cells whose center is
    within margin of [lo, hi] on every local axis."""
    visited = np.zeros(k ** d, dtype=bool)
    inv = 1.0 / k
    out = []
    stack = [start]
    visited[start] = True
    strides = [k ** (d - 1 - a) for a in range(d)]
    while stack:
        cell = stack.pop()
        idx = []
        rem = cell
        for s in strides:
            idx.append(rem // s)
            rem %= s
        center = (np.array(idx, dtype=np.float64) + 0.5) * inv
        local = basis @ (center - origin)
        ok = bool(np.all(local >= lo - margin) and np.all(local <= hi + margin))
        if not ok and cell != start:
            continue
        out.append(cell)
        for offs in itertools.product((-1, 0, 1), repeat=d):
            ncell = 0
            valid = True
            for a in range(d):
                v = idx[a] + offs[a]
                if v < 0 or v >= k:
                    valid = False
                    break
                ncell = ncell * k + v
            if valid and not visited[ncell]:
                visited[ncell] = True
                stack.append(ncell)
    return np.array(sorted(out), dtype=np.int64)
