"""
Projective representations: reduction, iteration, degrees and indeterminacy.
"""
import pytest

from merolab.poly import PolyTuple, SparsePoly
from merolab.projective import (
    DimensionMismatchError,
    HomogRep,
    MapFormatError,
    MonomialMap,
    ProjectiveMapError,
    algebraic_degree,
    compose_raw,
    compose_reduce,
    contracted_curves,
    dehomogenize,
    dumps_map,
    hits_indeterminacy,
    indeterminacy,
    iterate_closed,
    loads_map,
    local_lift,
    reduce_rep,
    restrict_chart,
    topological_degree,
)
from merolab.registry import cremona_map, map_f


def closed_form(k: int) -> PolyTuple:
    """[z0^(2^k) z1^(2^k - 1) : z1^(2^(k+1) - 1) : z0^(2^(k+1) - 2) z2]"""
    n = 2 ** k
    return PolyTuple([
        SparsePoly.monomial((n, n - 1, 0)),
        SparsePoly.monomial((0, 2 * n - 1, 0)),
        SparsePoly.monomial((2 * n - 2, 0, 1)),
    ])


@pytest.mark.parametrize("k", range(1, 7))
def test_iterates_of_map_f_match_closed_form(k):
    assert iterate_closed(map_f(2), k).tuple == closed_form(k)


def test_iterate_by_squaring_agrees_with_stepwise_composition():
    z0, z1, z2 = SparsePoly.variables(3)
    g = HomogRep.from_components([z0 ** 2, z1 ** 2 + z0 * z1, z2 ** 2], name="g")

    stepwise = compose_reduce(g, compose_reduce(g, g))
    assert iterate_closed(g, 3).tuple == stepwise.tuple
    assert iterate_closed(g, 3).degree == 8


def test_monomial_iterates_match_composition():
    f = map_f(2)
    assert iterate_closed(f, 3).tuple == compose_reduce(f, compose_reduce(f, f)).tuple


@pytest.mark.parametrize("d, a, b", [(2, 1, 2), (2, 2, 3), (2, 3, 3), (3, 1, 2), (3, 2, 2)])
def test_iterates_add_under_composition(d, a, b):
    f = map_f(d)
    assert iterate_closed(f, a + b).tuple == compose_reduce(iterate_closed(f, a), iterate_closed(f, b)).tuple


def test_cremona_iterates_add_under_composition():
    c = cremona_map()
    for a, b in [(1, 1), (1, 2), (2, 3)]:
        assert iterate_closed(c, a + b).tuple == compose_reduce(iterate_closed(c, a), iterate_closed(c, b)).tuple


@pytest.mark.parametrize("f", [map_f(2), map_f(3), cremona_map()], ids=["deg2", "deg3", "cremona"])
def test_affine_powers_match_chart_matrices_of_iterates(f):
    m = MonomialMap.from_rep(f)
    for k in range(1, 11):
        power = [[int(x) for x in row] for row in m.affine_power(k)]
        chart = [[int(x) for x in row] for row in restrict_chart(iterate_closed(f, k), 0).exponent_matrix()]
        assert power == chart


@pytest.mark.parametrize("f, g", [
    (map_f(2), map_f(3)),
    (map_f(3), map_f(3)),
    (map_f(2), cremona_map()),
    (cremona_map(), map_f(4)),
])
def test_topological_degree_is_multiplicative(f, g):
    composed = MonomialMap.from_rep(compose_reduce(f, g))

    expected = topological_degree(MonomialMap.from_rep(f)) * topological_degree(MonomialMap.from_rep(g))
    assert topological_degree(composed) == expected


def test_raw_composition_carries_content():
    """f o f before reduction has degree 9 and content z1^2."""
    f = map_f(2)
    raw = compose_raw(f, f)
    reduced = reduce_rep(raw)

    assert raw.degree == 9
    assert reduced.degree == 7
    assert reduced.reduced


def test_reduce_is_idempotent():
    z0, z1, z2 = SparsePoly.variables(3)
    g = z0 + z1
    rep = HomogRep.from_components([z0 * g, z1 * g, z2 * g])

    once = reduce_rep(rep)
    assert once.tuple == PolyTuple([z0, z1, z2])
    assert reduce_rep(once).tuple == once.tuple


def test_reduced_flag_is_checked():
    z0, z1 = SparsePoly.variables(2)
    with pytest.raises(ProjectiveMapError):
        HomogRep.from_components([z0 * z1, z0 * z0], reduced=True)


def test_non_homogeneous_components_are_rejected():
    z0, z1 = SparsePoly.variables(2)
    with pytest.raises(ProjectiveMapError):
        HomogRep.from_components([z0 * z1, z0])


def test_cremona_is_an_involution():
    c = cremona_map()
    assert compose_reduce(c, c).tuple == HomogRep.identity(2).tuple


def test_composition_dimension_mismatch():
    z0, z1 = SparsePoly.variables(2)
    line = HomogRep.from_components([z0, z1])
    with pytest.raises(DimensionMismatchError):
        compose_reduce(cremona_map(), line)


@pytest.mark.parametrize("d", range(2, 6))
def test_degrees_of_map_f(d):
    f = map_f(d)
    assert algebraic_degree(f) == d + 1
    assert topological_degree(MonomialMap.from_rep(f)) == d


def test_cremona_degrees():
    c = cremona_map()
    assert algebraic_degree(c) == 2
    assert topological_degree(MonomialMap.from_rep(c)) == 1


def test_indeterminacy_of_map_f():
    report = indeterminacy(reduce_rep(map_f(2)))

    assert sorted(report.to_dict()['points']) == ['[0:0:1]', '[1:0:0]']
    assert not report.components


def test_indeterminacy_of_cremona():
    report = indeterminacy(reduce_rep(cremona_map()))
    assert sorted(report.to_dict()['points']) == ['[0:0:1]', '[0:1:0]', '[1:0:0]']


def test_indeterminacy_requires_reduced_rep():
    with pytest.raises(ValueError):
        indeterminacy(map_f(2))


def test_contracted_line_of_map_f():
    """{z1 = 0} goes to q = [0:0:1] and {z0 = 0} to r = [0:1:0]."""
    curves = contracted_curves(MonomialMap.from_rep(map_f(2)))
    images = {c.line: [str(v) for v in c.image] for c in curves}

    assert images[1] == ["0", "0", "1"]
    assert images[0] == ["0", "1", "0"]


def test_zero_patterns_reach_indeterminacy():
    m = MonomialMap.from_rep(map_f(2))

    # {z0 = 0} lands on the fixed point r
    assert hits_indeterminacy(m, frozenset({0})) is None
    # {z1 = 0} is contracted onto q, an indeterminacy point
    assert hits_indeterminacy(m, frozenset({1})) == 1
    # the torus never meets it
    assert hits_indeterminacy(m, frozenset()) is None


def test_dehomogenize_chart():
    u1, u2 = SparsePoly.variables(2)

    assert dehomogenize(map_f(2), 0) == PolyTuple([u1, u1 ** 3, u2])


def test_map_text_round_trip():
    f = iterate_closed(map_f(2), 2)
    again = loads_map(dumps_map(f))

    assert again.tuple == f.tuple
    assert again.reduced


@pytest.mark.parametrize("text", [
    "component: 1 [1,0]\n",
    "variables: z0 z1\ncomponent: 1 [1]\n",
    "variables: z0 z1\nkind: affine\ncomponent: 1 [1,0]\n",
    "variables: z0 z1\ncomponent: x [1,0]\n",
    "variables: z0 z1\n",
])
def test_malformed_map_text(text):
    with pytest.raises(MapFormatError):
        loads_map(text)


def test_restrict_chart_cancels_common_factors():
    u1, u2 = SparsePoly.variables(2)
    chart_map = restrict_chart(map_f(2), 0)

    assert chart_map.numerators == (u1 ** 2, u2)
    assert chart_map.denominators == (SparsePoly.one(2), u1)


def test_sampled_indeterminacy_finds_the_chart_origin():
    report = indeterminacy(reduce_rep(map_f(2)), mode="sampled", chart=0)

    assert len(report.sampled_points) == 1
    assert abs(report.sampled_points[0][0]) < 1e-6
    assert abs(report.sampled_points[0][1]) < 1e-6


def test_local_lift_moves_the_center_to_the_origin():
    lifted = local_lift(map_f(2), 0, (1, 1))

    assert lifted.local
    at_center = [c.evaluate_exact((0, 0)) for c in lifted.tuple.components]
    assert at_center[0] == at_center[1] == at_center[2]
    assert not at_center[0].is_zero
    # u1 = 0 in the old chart lands on [0:0:1]
    on_axis = [c.evaluate_exact((-1, 0)) for c in lifted.tuple.components]
    assert on_axis[0].is_zero and on_axis[1].is_zero
    assert not on_axis[2].is_zero
