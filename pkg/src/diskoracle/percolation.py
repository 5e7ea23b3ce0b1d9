"""Directed-grid percolation: monotone up/right reachability on on/off cells.

Cells (x, y) are 1-based with x the column and y the row; movement goes from
a cell to its upper or right neighbor and requires both cells on. The
quantity of interest is the probability that no path joins (1,1) to (n,n)
when each cell is off independently with probability q. Three routes to it
live here: Monte Carlo, an exact column-sweep DP (n <= 16), and the
closed-form contour-counting bound 4a^2/(1-a)^3 with a = 3 q^(1/4), valid
for q < 1/(2^10 3^4).

antipath_exists() reproduces the flawed obstruction notion this bound
replaces: a single connected component of off cells that blocks the grid.
The shipped 5x5 counterexample blocks without one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import STREAM_PERCOLATION, generator
from .schedule import C_GRID, Q0


@dataclass(frozen=True)
class GridInstance:
    """n x n on/off matrix; index [x-1, y-1] for cell (x, y)."""

    on: np.ndarray

    def __post_init__(self):
        on = np.asarray(self.on, dtype=bool)
        if on.ndim != 2 or on.shape[0] != on.shape[1]:
            raise ValueError(f"grid must be square, got shape {on.shape}")
        object.__setattr__(self, "on", on)

    @property
    def n(self) -> int:
        return self.on.shape[0]

    def cell(self, x: int, y: int) -> bool:
        return bool(self.on[x - 1, y - 1])

    def off_cells(self) -> set:
        xs, ys = np.nonzero(~self.on)
        return {(int(x) + 1, int(y) + 1) for x, y in zip(xs, ys)}


def grid_from_off_cells(n: int, off: set) -> GridInstance:
    on = np.ones((n, n), dtype=bool)
    for (x, y) in off:
        on[x - 1, y - 1] = False
    return GridInstance(on=on)


def reachable_cells(g: GridInstance) -> set:
    """All cells reachable from (1,1) by up/right moves over on cells."""
    n = g.n
    reach = np.zeros((n, n), dtype=bool)
    on = g.on
    for x in range(n):
        for y in range(n):
            if not on[x, y]:
                continue
            if x == 0 and y == 0:
                reach[x, y] = True
            else:
                reach[x, y] = (x > 0 and reach[x - 1, y]) or (y > 0 and reach[x, y - 1])
    xs, ys = np.nonzero(reach)
    return {(int(x) + 1, int(y) + 1) for x, y in zip(xs, ys)}


def grid_reachable(g: GridInstance) -> bool:
    """True iff a monotone path of on cells joins (1,1) to (n,n)."""
    n = g.n
    if not (g.on[0, 0] and g.on[n - 1, n - 1]):
        return False
    return (n, n) in reachable_cells(g)


@dataclass(frozen=True)
class PercEstimate:
    mean: float
    stderr: float
    trials: int
    seed: int


def sample_no_path_prob(n: int, q: float, trials: int, seed: int) -> PercEstimate:
    """Monte-Carlo estimate of the no-path probability over i.i.d. grids."""
    if not (0.0 <= q <= 1.0):
        raise ValueError(f"q must lie in [0, 1], got {q}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = generator(seed, STREAM_PERCOLATION)
    failures = 0
    chunk = max(1, min(trials, 20_000))
    left = trials
    while left > 0:
        t = min(chunk, left)
        on = rng.random((t, n, n)) >= q
        reach = np.zeros_like(on)
        for x in range(n):
            for y in range(n):
                if x == 0 and y == 0:
                    reach[:, x, y] = on[:, x, y]
                    continue
                acc = np.zeros(t, dtype=bool)
                if x > 0:
                    acc |= reach[:, x - 1, y]
                if y > 0:
                    acc |= reach[:, x, y - 1]
                reach[:, x, y] = on[:, x, y] & acc
        failures += int(t - np.count_nonzero(reach[:, n - 1, n - 1]))
        left -= t
    mean = failures / trials
    return PercEstimate(mean=mean, stderr=math.sqrt(mean * (1.0 - mean) / trials),
                        trials=trials, seed=seed)


def exact_no_path_prob(n: int, q: float) -> float:
    """Exact no-path probability by a column-sweep DP over reachability
    bitmasks (2^n states per column, cells revealed one row at a time)."""
    if not (1 <= n <= 16):
        raise ValueError(f"exact DP supports 1 <= n <= 16, got {n}")
    if not (0.0 <= q <= 1.0):
        raise ValueError(f"q must lie in [0, 1], got {q}")
    p = 1.0 - q
    size = 1 << n
    # Incoming "reachability" seed for column 1: only row 1 can be entered.
    v = np.zeros(size)
    v[1] = 1.0
    for _col in range(n):
        for y in range(n):
            blk = 1 << y
            vv = v.reshape(size // (2 * blk), 2, blk)
            v0 = vv[:, 0, :]
            v1 = vv[:, 1, :]
            if y == 0:
                carry = np.zeros(1)
            else:
                # bit y-1 is already the new column's reachability
                carry = (np.arange(blk) >= (blk >> 1)).astype(np.float64)
            on0 = p * carry            # cell on AND (incoming or below)
            out0 = v0 * (1.0 - on0) + v1 * (1.0 - p)
            out1 = v0 * on0 + v1 * p
            nv = np.empty_like(vv)
            nv[:, 0, :] = out0
            nv[:, 1, :] = out1
            v = nv.reshape(size)
    top = np.arange(size) >= (size >> 1)
    return float(np.sum(v[~top]))


def enumerate_no_path_prob(n: int, q: float) -> float:
    """Brute-force oracle: sum over all 2^(n^2) configurations (n <= 4)."""
    if not (1 <= n <= 4):
        raise ValueError(f"enumeration is limited to n <= 4, got {n}")
    p = 1.0 - q
    cells = n * n
    total = 0.0
    for mask in range(1 << cells):
        on = np.array([(mask >> c) & 1 for c in range(cells)], dtype=bool).reshape(n, n)
        g = GridInstance(on=on)
        if not grid_reachable(g):
            k = int(on.sum())
            total += p ** k * q ** (cells - k)
    return total


def no_path_bound(q: float) -> float:
    """Contour-counting bound 4a^2/(1-a)^3, a = 3 q^(1/4); requires q < Q0."""
    if not (0.0 < q < Q0):
        raise ValueError(f"bound valid only for 0 < q < {Q0}, got {q}")
    a = 3.0 * q ** 0.25
    return 4.0 * a * a / (1.0 - a) ** 3


def no_path_bound_simple(q: float) -> float:
    """Simplified form 288 sqrt(q) = sqrt(C_GRID * q), an upper bound of
    no_path_bound in its validity range."""
    if not (0.0 < q < Q0):
        raise ValueError(f"bound valid only for 0 < q < {Q0}, got {q}")
    return math.sqrt(C_GRID * q)


def _components(off: set, connectivity: int) -> list[set]:
    if connectivity == 4:
        steps = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    elif connectivity == 8:
        steps = [(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0)]
    else:
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    rest = set(off)
    comps = []
    while rest:
        seed = rest.pop()
        comp = {seed}
        frontier = [seed]
        while frontier:
            x, y = frontier.pop()
            for dx, dy in steps:
                nb = (x + dx, y + dy)
                if nb in rest:
                    rest.remove(nb)
                    comp.add(nb)
                    frontier.append(nb)
        comps.append(comp)
    return comps


def antipath_exists(g: GridInstance, connectivity: int = 8) -> bool:
    """True iff one connected component of off cells blocks the grid on its
    own, i.e. with only that component off, (n,n) is unreachable from (1,1).
    This is the obstruction notion whose insufficiency the 5x5 fixture
    demonstrates."""
    comps = _components(g.off_cells(), connectivity)
    for comp in comps:
        if not grid_reachable(grid_from_off_cells(g.n, comp)):
            return True
    return False


def format_grid(g: GridInstance) -> str:
    """Text format: first line n, then rows of 0/1 characters, row y=n first."""
    lines = [str(g.n)]
    for y in range(g.n, 0, -1):
        lines.append("".join("1" if g.cell(x, y) else "0" for x in range(1, g.n + 1)))
    return "\n".join(lines) + "\n"


def parse_grid(text: str) -> GridInstance:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows after the header, got {len(lines) - 1}")
    on = np.zeros((n, n), dtype=bool)
    for row, ln in enumerate(lines[1:]):
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise ValueError(f"bad row {row + 1}: {ln!r}")
        y = n - row
        for x in range(1, n + 1):
            on[x - 1, y - 1] = ln[x - 1] == "1"
    return GridInstance(on=on)
