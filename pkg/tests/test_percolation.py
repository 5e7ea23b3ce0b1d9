import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from diskoracle import percolation as perc
from diskoracle.schedule import Q0

FIXTURE = Path(__file__).parent / "data" / "antipath_counterexample.grid"

EXPECTED_REACHABLE = {
    (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1),
    (4, 1), (4, 2), (4, 3), (5, 1), (5, 2),
}


def test_all_on_reachable():
    g = perc.GridInstance(on=np.ones((3, 3), dtype=bool))
    assert perc.grid_reachable(g)


def test_two_by_two_cut():
    g = perc.grid_from_off_cells(2, {(1, 2), (2, 1)})
    assert not perc.grid_reachable(g)
    assert perc.grid_reachable(perc.grid_from_off_cells(2, {(1, 2)}))


def test_corner_off_means_unreachable():
    g = perc.grid_from_off_cells(3, {(1, 1)})
    assert not perc.grid_reachable(g)
    assert perc.reachable_cells(g) == set()


def test_counterexample_fixture():
    g = perc.parse_grid(FIXTURE.read_text())
    assert g.n == 5
    assert g.off_cells() == {(1, 4), (2, 3), (3, 2), (4, 4), (5, 3)}
    assert not perc.grid_reachable(g)
    assert perc.reachable_cells(g) == EXPECTED_REACHABLE
    assert not perc.antipath_exists(g, connectivity=4)
    assert not perc.antipath_exists(g, connectivity=8)


def test_grid_format_roundtrip():
    g = perc.parse_grid(FIXTURE.read_text())
    assert perc.parse_grid(perc.format_grid(g)).off_cells() == g.off_cells()
    assert perc.format_grid(g) == FIXTURE.read_text()


def test_antipath_single_column_blocks():
    n = 5
    g = perc.grid_from_off_cells(n, {(2, y) for y in range(1, n + 1)})
    assert perc.antipath_exists(g, connectivity=4)
    assert not perc.grid_reachable(g)


def test_antipath_all_on():
    g = perc.GridInstance(on=np.ones((4, 4), dtype=bool))
    assert not perc.antipath_exists(g, 4)
    assert not perc.antipath_exists(g, 8)


def test_antipath_diagonal_needs_8_connectivity():
    n = 3
    off = {(1, 3), (2, 2), (3, 1)}
    g = perc.grid_from_off_cells(n, off)
    assert not perc.grid_reachable(g)
    assert perc.antipath_exists(g, 8)
    assert not perc.antipath_exists(g, 4)
    with pytest.raises(ValueError):
        perc.antipath_exists(g, 6)


def test_sampling_degenerate_q():
    assert perc.sample_no_path_prob(5, 1.0, 100, 1).mean == 1.0
    assert perc.sample_no_path_prob(5, 0.0, 100, 1).mean == 0.0


def test_sampling_reproducible():
    a = perc.sample_no_path_prob(8, 0.4, 5000, 9)
    b = perc.sample_no_path_prob(8, 0.4, 5000, 9)
    assert a == b
    assert abs(a.stderr - math.sqrt(a.mean * (1 - a.mean) / 5000)) < 1e-15


def test_sampling_matches_exact_dp():
    est = perc.sample_no_path_prob(10, 0.5, 100_000, 3)
    exact = perc.exact_no_path_prob(10, 0.5)
    assert abs(est.mean - exact) <= 4 * est.stderr


def test_sampling_rejects_bad_params():
    with pytest.raises(ValueError):
        perc.sample_no_path_prob(5, 1.5, 10, 1)
    with pytest.raises(ValueError):
        perc.sample_no_path_prob(5, 0.5, 0, 1)


def test_exact_n1():
    for q in (0.0, 0.3, 1.0):
        assert abs(perc.exact_no_path_prob(1, q) - q) < 1e-15


def test_exact_n2_closed_form():
    # no path iff not(both corners on and at least one middle cell on)
    for q in (0.1, 0.5, 0.9):
        p = 1 - q
        want = 1 - p * p * (1 - q * q)
        assert abs(perc.exact_no_path_prob(2, q) - want) < 1e-15
    assert perc.exact_no_path_prob(2, 0.5) == pytest.approx(0.8125, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exact_matches_enumeration(n):
    for q in np.linspace(0.0, 1.0, 21):
        a = perc.exact_no_path_prob(n, float(q))
        b = perc.enumerate_no_path_prob(n, float(q))
        assert abs(a - b) <= 1e-12


def test_exact_range_checks():
    with pytest.raises(ValueError):
        perc.exact_no_path_prob(17, 0.5)
    with pytest.raises(ValueError):
        perc.exact_no_path_prob(0, 0.5)


def test_exact_monotone_in_q():
    qs = np.linspace(0.02, 0.98, 25)
    vals = [perc.exact_no_path_prob(7, float(q)) for q in qs]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_no_path_bound_values():
    # alpha = 3/32 exactly at q = 2^-20: bound = 1152/24389
    want = Fraction(1152, 24389)
    assert abs(perc.no_path_bound(2.0 ** -20) - float(want)) < 1e-15
    # frozen from high-precision evaluation
    assert abs(perc.no_path_bound(2.0 ** -30) - 0.00115511690014) < 1e-12
    assert abs(perc.no_path_bound_simple(2.0 ** -30) - 0.0087890625) < 1e-15


def test_no_path_bound_validity_range():
    with pytest.raises(ValueError):
        perc.no_path_bound(Q0)
    with pytest.raises(ValueError):
        perc.no_path_bound(0.0)
    q = Q0 * 0.999
    assert perc.no_path_bound(q) < 1.0
    assert perc.no_path_bound(q) <= perc.no_path_bound_simple(q)


def test_bound_dominates_exact():
    for n in range(1, 15):
        for q in (2.0 ** -20, 2.0 ** -24, 2.0 ** -28):
            ex = perc.exact_no_path_prob(n, q)
            assert ex <= perc.no_path_bound(q)
            assert ex <= perc.no_path_bound_simple(q)
