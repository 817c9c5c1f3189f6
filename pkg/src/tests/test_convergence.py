"""
Classifier verdicts on the registry families, bubbles and separation.
"""
from fractions import Fraction
import math

import numpy as np
import pytest

from merolab.convergence import (
    Evidence,
    Hyperplane,
    Level,
    MapFamily,
    Slice,
    Verdict,
    bubble_probe,
    classify,
    counts_bounded,
    divisor_count_bound,
    fs_distance,
    hausdorff,
    mass_trend,
    reducedness_of_limit,
    rep_limit,
    uniform_separation,
)
from merolab.poly import GaussianRational, PolyTuple, SparsePoly
from merolab.projective import HomogRep
from merolab.registry import (
    cremona_map,
    exp_b_family,
    exp_family,
    map_f_iterates,
    rash_family,
    rutish_family,
)


# disk of radius 1/2 around the origin of the z-line
DISK = Slice((GaussianRational(0),), 0, 0.5)


def report_for(verdict: Verdict, label: str):
    return next(r for r in verdict.evidence.divisor_counts if r.hyperplane == label)


def test_exp_partial_sums_diverge(quick_config):
    verdict = classify(exp_family(k_max=10), config=quick_config, with_masses=False)

    assert verdict.level is Level.DIVERGENT
    # the slice is the disk of radius 1/2 around the pole
    assert report_for(verdict, "Z_0").counts == {k: k for k in range(1, 11)}
    assert report_for(verdict, "Z_0").bounded is False
    assert not verdict.supports(Level.GAMMA)


def test_shifted_family_is_gamma_but_not_weak(quick_config):
    verdict = classify(exp_b_family(k_max=50), config=quick_config)

    assert verdict.level is Level.GAMMA
    assert verdict.evidence.content == "z0"
    assert verdict.evidence.reduced is False
    assert verdict.supports(Level.GAMMA)
    assert not verdict.supports(Level.WEAK)
    assert not verdict.supports(Level.STRONG)


def test_uniform_limit_off_a_line_is_not_gamma(quick_config):
    verdict = classify(rutish_family(k_max=10), config=quick_config, with_masses=False)

    assert verdict.level is Level.DIVERGENT
    assert any(r.bounded is False for r in verdict.evidence.divisor_counts)


def test_exact_families_have_zero_rep_distance(quick_config):
    fam = MapFamily.constant(cremona_map(), k_max=6)
    result = rep_limit(fam, config=quick_config)

    assert result.converged
    assert max(result.series) == 0


def test_fs_distance_of_equal_vectors_is_zero(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)

    assert fs_distance(v, v.copy()) == 0.0
    assert fs_distance(v, (2 - 1j) * v) == pytest.approx(0.0, abs=1e-7)
    assert fs_distance(v, np.zeros(4)) == 1.0


@pytest.mark.parametrize("make", [
    lambda: exp_family(k_max=10),
    lambda: exp_b_family(k_max=50),
    lambda: rutish_family(k_max=10),
    lambda: MapFamily.constant(cremona_map(), k_max=6),
], ids=["exp", "exp-b", "rutish", "cremona"])
@pytest.mark.parametrize("factor", [3, 2 - 1j, Fraction(1, 7)], ids=["int", "gaussian", "fraction"])
def test_classification_ignores_a_common_scalar(quick_config, make, factor):
    family = make()

    plain = classify(family, config=quick_config, with_masses=False)
    scaled = classify(family.scaled(factor), config=quick_config, with_masses=False)

    assert scaled.level is plain.level
    assert scaled.evidence.reduced == plain.evidence.reduced
    assert scaled.evidence.content == plain.evidence.content


@pytest.mark.slow
def test_rashkovskii_family_is_weak(quick_config):
    verdict = classify(rash_family(k_max=6, samples=quick_config.mc_samples), config=quick_config)

    assert verdict.level is Level.WEAK
    assert verdict.evidence.reduced is True
    assert verdict.supports(Level.GAMMA)
    assert not verdict.supports(Level.STRONG)


@pytest.mark.slow
def test_constant_family_is_strong(quick_config):
    verdict = classify(MapFamily.constant(cremona_map(), k_max=6), config=quick_config)

    assert verdict.level is Level.STRONG
    assert verdict.supports(Level.WEAK)
    assert verdict.supports(Level.GAMMA)


def test_without_masses_a_reduced_limit_stops_at_weak(quick_config):
    verdict = classify(MapFamily.constant(cremona_map(), k_max=6), config=quick_config, with_masses=False)

    assert verdict.level is Level.WEAK
    assert "masses not evaluated" in verdict.evidence.notes


def test_level_parse():
    assert Level.parse("gamma") is Level.GAMMA
    assert Level.parse("Strong") is Level.STRONG
    with pytest.raises(ValueError):
        Level.parse("uniform")


def test_levels_are_ordered():
    assert Level.STRONG.rank > Level.WEAK.rank > Level.GAMMA.rank > Level.DIVERGENT.rank
    assert Level.INCONCLUSIVE.rank is None


def test_verdict_without_evidence_supports_nothing_above_its_level():
    verdict = Verdict("empty", Level.STRONG, Evidence())

    # a Strong label without the stage evidence asserts nothing
    assert not verdict.supports(Level.GAMMA)
    assert not verdict.supports(Level.DIVERGENT)
    assert Verdict("x", Level.INCONCLUSIVE, Evidence()).supports(Level.INCONCLUSIVE)


@pytest.mark.parametrize("counts, bounded", [
    ([1, 1, 1, 1], True),
    ([0, 1, 1, 1, 1, 1], True),
    ([1, 2, 3, 4, 5, 6], False),
    ([3], None),
])
def test_counts_bounded(counts, bounded):
    assert counts_bounded(counts) is bounded


def test_pole_of_growing_order_has_unbounded_counts():
    report = divisor_count_bound(exp_family(k_max=6), Hyperplane.coordinate(0, 2), [DISK])

    assert report.counts == {k: k for k in range(1, 7)}
    assert report.bounded is False


def test_moving_zero_has_bounded_counts():
    report = divisor_count_bound(exp_b_family(), Hyperplane.coordinate(1, 2), [DISK], ks=range(3, 10))

    assert set(report.counts.values()) == {1}
    assert report.bounded is True


def test_hyperplane_containing_the_limit_is_skipped():
    z = SparsePoly.variable(0, 1)
    diagonal = Hyperplane((GaussianRational(1), GaussianRational(-1)), "diagonal")

    report = divisor_count_bound(exp_b_family(), diagonal, [DISK], candidate=PolyTuple([z, z]), content=z)

    assert report.skipped == "limit image lies in the hyperplane"
    assert report.counts == {}


def test_reducedness_of_limit():
    z0, z1, z2 = (SparsePoly.variable(i, 3) for i in range(3))

    common = reducedness_of_limit(PolyTuple([z0 * z1, z0 * z2]))
    assert not common.reduced
    assert str(common.content) == "z0"

    assert reducedness_of_limit(PolyTuple([z1, z2])).reduced


@pytest.mark.parametrize("values, reference, trend", [
    ([1.0, 1.0, 1.0], None, "converging"),
    ([1.0, 1.0, 1.0], 1.0, "converging"),
    ([1.0, 2.0, 3.0], None, "diverging"),
    ([1.0, 1.0, 1.0], 2.0, "diverging"),
])
def test_mass_trend(values, reference, trend):
    assert mass_trend([4, 5, 6], values, [0.0] * 3, reference=reference)[0] == trend


def test_single_mass_is_inconclusive():
    assert mass_trend([4], [1.0], [0.0])[0] == "inconclusive"


def test_bubble_over_delta_star():
    """Spheres around a point of {u2 = 0} map near the line {Z1 = 0}."""
    fam = map_f_iterates(2, k_max=5)

    report = bubble_probe(fam, (0.5, 0.0))

    assert report.status == "nonempty"
    assert report.nonempty is True
    assert any(abs(c.centroid[1]) < 0.05 for c in report.clusters)


def test_constant_family_has_no_bubbles(rng):
    fam = MapFamily.constant(cremona_map(), k_max=4)
    for _ in range(5):
        point = 0.5 + 0.3 * (rng.random(2) + 1j * rng.random(2))

        report = bubble_probe(fam, point)

        assert report.status == "empty"
        assert not report.clusters


def test_bubble_probe_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        bubble_probe(map_f_iterates(2, k_max=3), (0.5,))


def test_separation_fails_for_the_shifted_family():
    """The zeros 0 and 1/k of the two pullbacks merge."""
    fam = exp_b_family(k_max=12)
    report = uniform_separation(fam, Hyperplane.coordinate(0, 2), Hyperplane.coordinate(1, 2), ks=range(3, 13))

    np.testing.assert_allclose(report.distances, [1 / k for k in range(3, 13)], atol=1e-8)
    assert report.infimum == pytest.approx(1 / 12, abs=1e-8)


def test_separated_pullbacks():
    z = SparsePoly.variable(0, 1)
    fixed = HomogRep(PolyTuple([z, z - SparsePoly.constant(Fraction(1, 4), 1)]), local=True, name="fixed")

    report = uniform_separation(MapFamily.constant(fixed, k_max=4), Hyperplane.coordinate(0, 2),
                                Hyperplane.coordinate(1, 2))

    assert report.separated
    assert report.infimum == pytest.approx(0.25, abs=1e-8)


def test_hausdorff_of_an_empty_set_is_infinite():
    points = np.array([[0j, 1j]])

    assert hausdorff(points, np.zeros((0, 2), dtype=complex)) == math.inf
    assert hausdorff(points, points) == 0.0
