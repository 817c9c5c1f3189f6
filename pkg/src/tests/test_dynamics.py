"""
Orbits, Fatou scans, graph volumes and Fatou-set inclusions of map_f, the identity and Cremona.
"""
import time

import numpy as np
import pytest

from merolab.convergence import Level
from merolab.dynamics import (
    CONVERGED,
    FATOU_LABELS,
    JULIA,
    LABEL_FATOU,
    LABEL_JULIA,
    ChartGrid,
    OrbitRecord,
    classify_point,
    fatou_inclusion_report,
    fatou_membership,
    fatou_scan,
    fs_diameter,
    gamma_volume_series,
    label_records,
    log_orbit,
    log_orbit_batch,
    numeric_orbit,
    plan_of,
    second_bound,
)
from merolab.projective import HomogRep, MonomialMap
from merolab.registry import cremona_map, map_f


def expected_label(u1: complex, u2: complex) -> str:
    """Basins of the degree-2 map in the chart z0 = 1."""
    if abs(u1) > 1:
        return FATOU_LABELS['r']
    if abs(u1) < 1:
        return FATOU_LABELS['q'] if u2 != 0 else FATOU_LABELS['p']
    return LABEL_JULIA


def basin_agreement(scan, grid):
    """Cells with a margin of at least 0.05, and how many of them carry the expected label."""
    checked = agree = 0
    rows, cols = grid.shape
    for i in range(rows):
        for j in range(cols):
            margin = scan.margins[i][j]
            if margin is None or margin < 0.05:
                continue
            u1, u2 = grid.affine(i, j)
            checked += 1
            agree += scan.label_at(i, j) == expected_label(u1, u2)
    return checked, agree


def random_point(rng):
    """[1 : u1 : u2] with u2 != 0 and |log |u1|| >= 0.1."""
    while True:
        level = rng.uniform(-1.5, 1.5)
        if abs(level) >= 0.1:
            break
    a1, a2 = rng.uniform(0, 2 * np.pi, size=2)
    u1 = np.exp(level) * np.exp(1j * a1)
    u2 = rng.uniform(0.2, 2.0) * np.exp(1j * a2)
    return [1.0 + 0j, complex(u1), complex(u2)]


@pytest.fixture
def monomial_f():
    return MonomialMap.from_rep(map_f(2))


@pytest.mark.parametrize("point, limit", [
    ([1, 2, 1], "r"),
    ([1, 0.5, 1], "q"),
    ([1, 0.5, 0], "p"),
    ([1, 1.5j, 0.1], "r"),
])
def test_log_orbit_limits(monomial_f, point, limit):
    record = log_orbit(monomial_f, point, k=20)

    assert record.status == CONVERGED
    assert record.limit == limit


def test_log_orbit_on_the_cone_is_julia(monomial_f):
    record = log_orbit(monomial_f, [1, 1, 1], k=20)

    assert record.status == JULIA
    assert record.dominance.tied


def test_log_orbit_needs_three_steps(monomial_f):
    with pytest.raises(ValueError):
        log_orbit(monomial_f, [1, 2, 1], k=2)
    with pytest.raises(ValueError):
        log_orbit(monomial_f, [0, 0, 0], k=10)


def test_log_orbit_survives_huge_iterates(monomial_f):
    """Degrees 2^200 are far beyond floating point."""
    record = log_orbit(monomial_f, [1, 0.5, 1], k=200)
    assert record.limit == "q"


def test_numeric_orbit_agrees_with_log_orbit(monomial_f):
    f = map_f(2)
    for point in ([1, 2, 1], [1, 0.5, 1], [1, 0.5 + 0.3j, 0.7j]):
        assert numeric_orbit(f, point, k_max=30).limit == log_orbit(monomial_f, point, k=30).limit


@pytest.mark.parametrize("d", [2, 3])
def test_log_and_numeric_orbits_agree_on_random_points(rng, d):
    f = map_f(d)
    m = MonomialMap.from_rep(f)
    points = [random_point(rng) for _ in range(100)]

    for point in points:
        exact = log_orbit(m, point, k=30)
        assert exact.status == CONVERGED
        assert numeric_orbit(f, point, k_max=30).limit == exact.limit


@pytest.mark.parametrize("d", [2, 3])
def test_batched_log_orbits_match_exact_ones(rng, d):
    m = MonomialMap.from_rep(map_f(d))
    points = [random_point(rng) for _ in range(100)] + [[1, 1, 1], [1, 0.5, 0], [1, 0, 1], [1, 1j, 1]]

    batch = log_orbit_batch(plan_of(map_f(d)), points)

    for point, record in zip(points, batch):
        exact = log_orbit(m, point)
        assert (record.status, record.limit) == (exact.status, exact.limit)
        assert record.indeterminacy_step == exact.indeterminacy_step


def test_identity_orbits_are_stationary():
    identity = HomogRep.identity(2)
    point = [1, 0.7, 1.3]

    exact = log_orbit(MonomialMap.from_rep(identity), point, k=20)
    numeric = numeric_orbit(identity, point, k_max=20)
    batch = log_orbit_batch(plan_of(identity), [point])[0]

    assert exact.status == CONVERGED
    assert numeric.converged
    assert exact.limit == numeric.limit == batch.limit == "none"
    assert fs_diameter([exact.limit_point, point]) < 1e-6
    assert fs_diameter([batch.limit_point, point]) < 1e-6


def test_label_records_keeps_the_spread_of_fixed_points():
    starts = [[1, 0.7, 1.3], [1, 0.7007, 1.3], [1, 0.6993, 1.3]]
    fixed = [OrbitRecord(p, "numeric-orbit", status=CONVERGED, limit="none", limit_point=p) for p in starts]
    split = [
        OrbitRecord(p, "numeric-orbit", status=CONVERGED, limit=name, limit_point=target)
        for p, name, target in zip(starts, "rrq", ([0, 1, 0], [0, 1, 0], [0, 0, 1]))
    ]

    assert label_records(fixed, 1e-4) == LABEL_FATOU
    assert label_records(split, 1e-4) == LABEL_JULIA


def test_numeric_orbit_records_indeterminacy():
    """[1:0:1] is mapped onto the indeterminacy point [0:0:1]."""
    record = numeric_orbit(map_f(2), [1, 0, 1], k_max=10)

    assert record.indeterminacy_step == 1
    assert not record.converged


def test_classify_point_labels_basins():
    assert classify_point(map_f(2), (2.0, 1.0))[0] == FATOU_LABELS['r']
    assert classify_point(map_f(2), (0.5, 1.0))[0] == FATOU_LABELS['q']
    assert classify_point(map_f(2), (0.5, 0.0))[0] == FATOU_LABELS['p']


@pytest.mark.parametrize("d", [2, 3])
def test_scan_matches_the_basins(d):
    """Every map_f(d) shares the basins of the degree-2 map."""
    grid = ChartGrid(chart=0, u1=(0.2, 2.0), u2=(0.0, 2.0), resolution=12)

    scan = fatou_scan(map_f(d), grid)

    assert scan.method == "log-orbit"
    assert len(scan.labels) == 12
    checked, agree = basin_agreement(scan, grid)
    assert checked > 100
    assert agree >= 0.99 * checked


def test_identity_scan_is_fatou():
    scan = fatou_scan(HomogRep.identity(2), ChartGrid(resolution=4))

    assert scan.counts() == {LABEL_FATOU: 16}


@pytest.mark.slow
def test_full_resolution_scan_runs_within_two_minutes():
    grid = ChartGrid(resolution=200)

    start = time.perf_counter()
    scan = fatou_scan(map_f(2), grid)
    elapsed = time.perf_counter() - start

    assert elapsed < 120
    checked, agree = basin_agreement(scan, grid)
    assert checked > 30_000
    assert agree >= 0.99 * checked


def test_scan_is_invariant_under_torus_rotations(rng):
    base = ChartGrid(chart=0, u1=(0.3, 1.8), u2=(0.0, 1.5), resolution=5)
    reference = fatou_scan(map_f(2), base).labels

    for _ in range(20):
        phases = tuple(float(a) for a in rng.uniform(0, 2 * np.pi, size=2))
        rotated = ChartGrid(base.chart, base.u1, base.u2, base.resolution, phases)

        assert fatou_scan(map_f(2), rotated).labels == reference


def test_scan_frame_has_one_row_per_cell():
    grid = ChartGrid(resolution=4)
    frame = fatou_scan(map_f(2), grid).to_frame()

    assert len(frame) == 16
    assert set(frame['label']) <= set(FATOU_LABELS.values()) | {LABEL_JULIA, 'Indeterminate', 'Fatou'}


def test_scan_rejects_bad_grids():
    with pytest.raises(ValueError):
        ChartGrid(chart=3)
    with pytest.raises(ValueError):
        ChartGrid(u1=(1.0, 0.5))


def test_gamma_volumes_stay_below_their_bounds():
    series = gamma_volume_series(range(1, 9), eps=0.5, cross_check=(1, 2))

    for value, bound in zip(series.second, series.second_bounds):
        assert value <= bound
    assert all(b < a for a, b in zip(series.second, series.second[1:]))
    assert series.second[-1] < 1e-10
    assert series.first_limit == pytest.approx(0.25)
    assert series.agreement() < 0.02


def test_second_bound_closed_form():
    assert second_bound(1, 0.5) == pytest.approx(16 * 0.25 / 2)


@pytest.mark.parametrize("kwargs", [{'eps': 0.0}, {'eps': 1.0}, {'ks': [0, 1]}])
def test_gamma_volume_arguments(kwargs):
    with pytest.raises(ValueError):
        gamma_volume_series(**kwargs)


def test_fatou_membership_of_sample_points():
    f = map_f(2)
    member, step, limits, _ = fatou_membership(f, (2.0, 1.0))
    assert member is True
    assert limits == ["r"]

    member, step, _, _ = fatou_membership(f, (0.0, 1.0))
    assert member is False
    assert step == 1

    # additive neighbors leave {u2 = 0}
    member, _, _, _ = fatou_membership(f, (0.5, 0.0))
    assert member is False


def test_fixed_points_are_fatou_members():
    member, _, limits, _ = fatou_membership(HomogRep.identity(2), (0.7, 1.3))

    assert member is True
    assert limits == ["none"]


def test_cremona_settles_along_even_iterates():
    member, _, limits, notes = fatou_membership(cremona_map(), (0.7, 1.3), strides=(2,))

    assert member is True
    assert len(limits) == 2
    assert any("mod 2" in note for note in notes)


@pytest.mark.slow
def test_inclusion_report_of_the_degree_2_map():
    points = [(2.0, 1.0), (0.4, 1.0), (0.5, 0.0), (0.0, 1.0), (1.0, 1.0)]

    report = fatou_inclusion_report(map_f(2), points, chart=0)

    fatou = [m.fatou for m in report.memberships]
    levels = [m.level for m in report.memberships]
    assert fatou == [True, True, False, False, False]
    assert levels == [Level.STRONG, Level.STRONG, Level.GAMMA, Level.STRONG, Level.DIVERGENT]
    assert report.memberships[3].preimage_step == 1
    assert report.violations() == []
    assert 3 in report.strict()['fatou<strong']
    assert 2 in report.strict()['weak<gamma']


@pytest.mark.slow
def test_cremona_is_normal_along_even_iterates():
    report = fatou_inclusion_report(cremona_map(), [(0.7, 1.3)], chart=0, strides=(2,))

    assert report.memberships[0].level is Level.STRONG
    assert report.memberships[0].stride == 2
    assert report.memberships[0].fatou is True


def test_inclusion_report_arguments():
    with pytest.raises(ValueError):
        fatou_inclusion_report(map_f(2), [(1.0, 1.0)], radius=0)
    with pytest.raises(ValueError):
        fatou_inclusion_report(map_f(2), [(1.0, 1.0)], strides=(0,))
