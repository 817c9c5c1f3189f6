"""
Exact polynomial arithmetic, GCDs and log-scaled evaluation.
"""
from fractions import Fraction

import numpy as np
import pytest

from merolab.poly import (
    ExactDivisionError,
    GaussianRational,
    PolyTuple,
    PolynomialError,
    SparsePoly,
    VariableCountError,
    divide_tuple,
    eval_log,
    exact_divide,
    poly_arith,
    poly_gcd,
    tuple_content,
)


def test_gaussian_rational_literals():
    """Literals parse back to the same value."""
    for value in (GaussianRational(Fraction(-3, 4), Fraction(1, 2)), GaussianRational(5), GaussianRational(0, -2)):
        assert GaussianRational.parse(str(value)) == value

    assert str(GaussianRational(Fraction(1, 2), -1)) == "1/2-1i"
    with pytest.raises(ValueError):
        GaussianRational.parse("one half")


def test_canonical_form_drops_zero_terms():
    z0, z1 = SparsePoly.variables(2)
    p = (z0 + z1) * (z0 - z1)

    assert p == z0 ** 2 - z1 ** 2
    assert len(p) == 2
    assert (p - p).is_zero
    assert p.is_homogeneous
    assert p.total_degree() == 2


def test_poly_arith_rejects_mixed_rings():
    with pytest.raises(VariableCountError):
        poly_arith(SparsePoly.variable(0, 1), SparsePoly.variable(0, 2), "add")
    with pytest.raises(ValueError):
        poly_arith(SparsePoly.one(1), SparsePoly.one(1), "pow")


def test_huge_exponents_stay_integral():
    """Exponents of deep iterates are Python integers, never floats."""
    z0, z1 = SparsePoly.variables(2)
    big = 2 ** 70
    p = SparsePoly.monomial((big, 1)) * z1

    assert p.leading_term[0] == (big, 2)
    assert poly_gcd(p, SparsePoly.monomial((3, 5))) == SparsePoly.monomial((3, 2))


def test_gcd_of_products():
    z0, z1 = SparsePoly.variables(2)
    g = z0 + 2 * z1
    a = g * (z0 - z1)
    b = g * (z0 ** 2 + z1)

    assert poly_gcd(a, b) == g
    assert poly_gcd(a * z0 ** 3, b * z0) == g * z0


def test_gcd_rejects_zero():
    with pytest.raises(ValueError):
        poly_gcd(SparsePoly.zero(2), SparsePoly.one(2))


def test_exact_divide_rejects_non_divisors():
    z0, z1 = SparsePoly.variables(2)
    with pytest.raises(ExactDivisionError):
        exact_divide(z0 ** 2 + z1, z0 + z1)
    with pytest.raises(ZeroDivisionError):
        exact_divide(z0, SparsePoly.zero(2))


def test_content_idempotence(make_poly):
    """Dividing out the content leaves a tuple of content 1."""
    for _ in range(100):
        t = PolyTuple([make_poly(), make_poly(), make_poly()])
        g = tuple_content(t)
        reduced = divide_tuple(t, g)

        assert tuple_content(reduced).is_constant
        assert tuple_content(reduced) == SparsePoly.one(2)


def test_content_absorbs_common_factor(make_poly):
    """Multiplying every component by g multiplies the content by g."""
    for _ in range(100):
        t = PolyTuple([make_poly(), make_poly()])
        g = make_poly(terms=2, max_degree=2)
        scaled = t.multiply(g)

        quotient = exact_divide(tuple_content(scaled), tuple_content(t))
        assert exact_divide(quotient, g).is_constant
        assert exact_divide(g, quotient).is_constant


def test_tuple_rejects_all_zero():
    with pytest.raises(PolynomialError):
        PolyTuple([SparsePoly.zero(2), SparsePoly.zero(2)])


def test_log_evaluation_matches_direct_evaluation():
    z0, z1 = SparsePoly.variables(2)
    t = PolyTuple([z0 ** 3 * z1, z1 ** 4 + z0, SparsePoly.constant(Fraction(1, 3), 2)])
    point = (0.7 - 0.2j, 1.3 + 0.4j)

    result = eval_log(t, [(np.log(abs(z)), np.angle(z)) for z in point])
    direct = t.evaluate(np.array([point]))[0]

    recovered = [np.exp(v.log_modulus + 1j * v.phase) for v in result.values]
    np.testing.assert_allclose(recovered, direct, rtol=1e-10)


def test_log_evaluation_survives_overflow():
    """|z^(2^20)| at |z| = 2 overflows a float but not its logarithm."""
    t = PolyTuple([SparsePoly.monomial((2 ** 20,)), SparsePoly.one(1)])

    result = eval_log(t, [(np.log(2.0), 0.0)])

    assert result.values[0].log_modulus == pytest.approx(2 ** 20 * np.log(2.0))
    assert result.values[1].log_modulus == pytest.approx(0.0)
    assert result.values[0].exact


def test_log_evaluation_of_zero_coordinates():
    z0, z1 = SparsePoly.variables(2)
    t = PolyTuple([z0 * z1, z1 + SparsePoly.one(2)])

    result = eval_log(t, [(-np.inf, 0.0), (0.0, 0.0)])

    assert result.values[0].is_zero
    assert result.values[1].log_modulus == pytest.approx(np.log(2.0))
