"""
Contour counts, Fubini-Study areas, mixed masses and residue checks.
"""
import numpy as np
import pytest

from merolab.poly import PolyTuple, SparsePoly
from merolab.projective import iterate_closed
from merolab.quadrature import (
    ContourSpec,
    ContourVanishingError,
    PolydiskSpec,
    RashkovskiiPotential,
    as_lift,
    as_potential,
    common_zero_count,
    elementary_symmetric,
    euclidean_mass,
    fs_area_boundary,
    fs_area_interior,
    graph_volume,
    king_residue_check,
    local_degree,
    locate_zeros,
    map_chunks,
    mass_constant,
    mixed_ma_mass,
    mixed_ma_masses,
    rashkovskii_eps,
    rashkovskii_law,
    rashkovskii_lift,
    rashkovskii_series,
    richardson,
    winding_report,
    zero_count_contour,
)
from merolab.registry import map_f


def line_lift() -> PolyTuple:
    """[1 : z]"""
    z = SparsePoly.variable(0, 1)
    return PolyTuple([SparsePoly.one(1), z])


@pytest.mark.parametrize("k", range(1, 13))
def test_zero_count_of_powers(k):
    h = SparsePoly.monomial((k,))
    contour = ContourSpec(0j, 0.5)

    assert zero_count_contour(h, contour) == k
    assert winding_report(h, contour).residual < 1e-6


def test_zero_count_of_black_box_function():
    contour = ContourSpec(0j, 1.0)
    assert zero_count_contour(lambda z: np.exp(z) * (z - 0.3) * (z + 0.4j), contour) == 2


def test_contour_through_a_zero():
    z = SparsePoly.variable(0, 1)
    with pytest.raises(ContourVanishingError):
        zero_count_contour(z - SparsePoly.constant(1, 1), ContourSpec(0j, 1.0))


def test_locate_zeros_inside_circle():
    z = SparsePoly.variable(0, 1)
    h = (z - SparsePoly.constant(0.25, 1)) * (z + SparsePoly.constant(3, 1))

    zeros = locate_zeros(h, ContourSpec(0j, 1.0))

    np.testing.assert_allclose(zeros, [0.25], atol=1e-10)


def test_common_zeros_of_non_reduced_lift():
    z = SparsePoly.variable(0, 1)
    lift = as_lift(PolyTuple([z, z ** 2]), nvars=1)
    assert common_zero_count(lift, ContourSpec(0j, 0.5)) == 1


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_area_of_a_line(r):
    disk = ContourSpec(0j, r)
    expected = r * r / (1 + r * r)

    assert fs_area_interior(line_lift(), disk).value == pytest.approx(expected, abs=1e-6)
    assert fs_area_boundary(line_lift(), disk).value == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_area_of_non_reduced_lift(r):
    """(z, z^2) has one common zero: the boundary term overshoots by exactly 1."""
    z = SparsePoly.variable(0, 1)
    report = fs_area_boundary(PolyTuple([z, z ** 2]), ContourSpec(0j, r))

    assert report.n_zeros == 1
    assert report.boundary_integral - 1 == pytest.approx(r * r / (1 + r * r), abs=1e-6)


def test_area_tends_to_one():
    disk = ContourSpec(0j, 100.0)
    assert fs_area_boundary(line_lift(), disk).value == pytest.approx(1.0, abs=1e-3)
    assert fs_area_interior(line_lift(), disk).value == pytest.approx(1.0, abs=1e-3)


def test_mass_of_a_line_is_its_area():
    dom = PolydiskSpec((0j,), (1.0,))
    assert mixed_ma_mass(line_lift(), dom, p=1).value == pytest.approx(0.5, abs=1e-6)


def test_euclidean_mass_of_unit_disk():
    assert euclidean_mass(PolydiskSpec((0j,), (1.0,))) == pytest.approx(1.0)


def test_mass_is_scale_invariant(rng):
    """Multiplying the lift by a constant does not change dd^c log ||F||^2."""
    z0, z1 = SparsePoly.variables(2)
    dom = PolydiskSpec((0j, 0j), (0.8, 0.8), radial_panels=3, nodes_per_panel=4, angular_nodes=8)
    for _ in range(20):
        a, b = (complex(*rng.integers(1, 5, size=2)) for _ in range(2))
        lift = PolyTuple([SparsePoly.one(2), z0.scale(a) + z1 * z1, z1.scale(b)])
        c = complex(*rng.integers(1, 9, size=2))

        plain = mixed_ma_masses(lift, dom, workers=1)
        scaled = mixed_ma_masses(lift.scale(c), dom, workers=1)

        for p in (1, 2):
            assert scaled[p].value == pytest.approx(plain[p].value, rel=1e-2)


@pytest.mark.parametrize("potential", [
    RashkovskiiPotential(2, 0.1),
    RashkovskiiPotential(3, 2.0 ** -12),
    RashkovskiiPotential(4, 0.0),
    as_potential(rashkovskii_lift(3, 0.05)),
    as_potential(iterate_closed(map_f(2), 3)),
], ids=["rash-2", "rash-3", "rash-4-eps0", "rash-lift", "deg2-iterate"])
def test_mixed_densities_are_nonnegative(rng, potential):
    n = potential.nvars
    points = rng.uniform(-0.9, 0.9, size=(500, n)) + 1j * rng.uniform(-0.9, 0.9, size=(500, n))

    eigs = np.linalg.eigvalsh(potential.hessian(points))
    scale = np.maximum(1.0, np.abs(eigs).max(axis=1))

    for p in range(1, n + 1):
        density = mass_constant(n, p) * elementary_symmetric(eigs, p)
        assert np.all(density / scale ** p >= -1e-8)


def test_richardson_removes_leading_term():
    value, correction, stable = richardson([1 + 1.0, 1 + 0.25, 1 + 0.0625])

    assert stable
    assert value == pytest.approx(1.0)
    assert correction == pytest.approx(-0.0625)


def test_richardson_flags_unstable_series():
    _, _, stable = richardson([1.0, 2.0, 1.5])
    assert not stable


@pytest.mark.parametrize("radius", [0.3, 0.7])
def test_king_atom_of_identity(radius):
    z1, z2 = SparsePoly.variables(2)
    report = king_residue_check(PolyTuple([z1, z2]), radius)

    assert report.atom == pytest.approx(1.0, abs=1e-3)


def test_king_atom_of_squares():
    z1, z2 = SparsePoly.variables(2)
    report = king_residue_check(PolyTuple([z1 ** 2, z2 ** 2]), 0.5)

    assert report.atom == pytest.approx(4.0, abs=5e-3)
    assert local_degree(PolyTuple([z1 ** 2, z2 ** 2])) == 4


@pytest.mark.parametrize("k", [2, 4, 6])
def test_local_degree_of_singular_limit(k):
    z1, z2, z3 = SparsePoly.variables(3)
    assert local_degree(PolyTuple([z1, z2, z3 ** (k // 2)])) == k // 2


def test_local_degree_needs_diagonal_germ():
    z1, z2 = SparsePoly.variables(2)
    with pytest.raises(ValueError):
        local_degree(PolyTuple([z1 + z2, z1 + z2 * z2]))


def test_rashkovskii_parameter():
    assert rashkovskii_eps(1) == pytest.approx(1 / 16)
    assert float(rashkovskii_eps(3)) == 2.0 ** -12


def test_rashkovskii_law_at_eps_zero_sits_on_the_floor():
    law = rashkovskii_law(3, 0, radius=0.5)

    assert law.focus[0] == 0
    assert list(law.rho_min) == pytest.approx([0.5e-9] * 3)
    assert list(law.rho_max) == pytest.approx([1.0] * 3)


def test_map_chunks_keeps_order_with_a_progress_bar(capsys):
    out = map_chunks(lambda x: x * x, range(6), workers=2, progress=True, desc="squares")

    assert out == [0, 1, 4, 9, 16, 25]
    assert "6/6" in capsys.readouterr().err


@pytest.mark.slow
def test_rashkovskii_masses_grow():
    reports = rashkovskii_series([2, 3], budget=10_000_000, seed=0)

    assert reports[0].value < reports[1].value
    for report in reports:
        assert report.error <= 0.1 * report.value


def test_graph_volume_of_a_line():
    """Euclidean mass 1 plus the area 1/2 of [1 : z] over the unit disk."""
    report = graph_volume(line_lift(), PolydiskSpec((0j,), (1.0,)))
    assert report.value == pytest.approx(1.5, abs=1e-5)
