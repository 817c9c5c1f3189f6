"""
Exact GCD, exact division and content of polynomial tuples.

Monomial contents are stripped combinatorially; what remains is handed to
sympy's multivariate GCD over QQ (or the Gaussian rationals QQ<I> when a
coefficient is non-real).
"""

from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple
import logging

import sympy
from sympy.polys.domains import QQ, QQ_I

from .gaussian import GaussianRational
from .sparse import PolyTuple, PolynomialError, SparsePoly, VariableCountError

logger = logging.getLogger(__name__)


class ExactDivisionError(PolynomialError):
    """Raised when a division leaves a nonzero remainder."""
    pass


def _gens(nvars: int) -> List[sympy.Symbol]:
    return list(sympy.symbols(f"z0:{nvars}")) if nvars else []


def _domain(*polys: SparsePoly):
    return QQ if all(p.is_real for p in polys) else QQ_I


def _sympy_coeff(c: GaussianRational):
    value = sympy.Rational(c.re.numerator, c.re.denominator)
    if c.im:
        value = value + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
    return value


def to_sympy(poly: SparsePoly, domain=None) -> sympy.Poly:
    """Convert to a sympy ``Poly`` in generators z0, z1, ..."""
    if poly.nvars == 0:
        raise PolynomialError("sympy conversion needs at least one variable")
    domain = domain or _domain(poly)
    rep = {e: _sympy_coeff(c) for e, c in poly.terms} or {(0,) * poly.nvars: 0}
    return sympy.Poly.from_dict(rep, *_gens(poly.nvars), domain=domain)


def to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def from_sympy(poly: sympy.Poly, nvars: Optional[int] = None) -> SparsePoly:
    """Convert a sympy ``Poly`` with rational or Gaussian rational coefficients."""
    nvars = len(poly.gens) if nvars is None else nvars
    terms = {}
    for monom, coeff in poly.terms():
        re_part, im_part = sympy.sympify(coeff).as_real_imag()
        terms[tuple(int(e) for e in monom)] = GaussianRational(to_fraction(re_part), to_fraction(im_part))
    return SparsePoly(terms, nvars)


def normalize_scalar(poly: SparsePoly) -> SparsePoly:
    """Scale so the lexicographically greatest term has coefficient 1."""
    if poly.is_zero:
        return poly
    lead = poly.leading_coefficient
    if lead == 1:
        return poly
    return poly.scale(GaussianRational(1) / lead)


def _min_exponents(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(min(x, y) for x, y in zip(a, b))


def poly_gcd(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """
    Greatest common divisor of two nonzero polynomials.

    The result is normalized by :func:`normalize_scalar`. Monomial content is
    handled without leaving integer exponent arithmetic, so iterates with
    exponents like 2^64 never reach the general path.

    Args:
        a: First polynomial
        b: Second polynomial

    Returns:
        The normalized GCD

    Raises:
        ValueError: If either operand is zero
        VariableCountError: If the operands live in different rings
    """
    if a.nvars != b.nvars:
        raise VariableCountError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    if a.is_zero or b.is_zero:
        raise ValueError("poly_gcd needs two nonzero polynomials")
    nvars = a.nvars
    content = _min_exponents(a.monomial_content(), b.monomial_content())
    if a.is_monomial or b.is_monomial or nvars == 0:
        return SparsePoly.monomial(content) if nvars else SparsePoly.one(0)

    a_strip = a.shift_monomial(a.monomial_content(), subtract=True)
    b_strip = b.shift_monomial(b.monomial_content(), subtract=True)
    if a_strip.is_constant or b_strip.is_constant:
        return SparsePoly.monomial(content)

    domain = _domain(a_strip, b_strip)
    logger.debug(f"General GCD over {domain} of {len(a_strip)}- and {len(b_strip)}-term polynomials")
    g = to_sympy(a_strip, domain).gcd(to_sympy(b_strip, domain))
    rest = from_sympy(g, nvars)
    return normalize_scalar(rest.shift_monomial(content))


def exact_divide(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """
    Exact quotient ``a / b``.

    Raises:
        ExactDivisionError: If ``b`` does not divide ``a``
        ZeroDivisionError: If ``b`` is zero
    """
    if a.nvars != b.nvars:
        raise VariableCountError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero:
        return a
    if b.is_monomial:
        exps, coeff = b.leading_term
        try:
            return a.shift_monomial(exps, subtract=True).scale(GaussianRational(1) / coeff)
        except PolynomialError as e:
            raise ExactDivisionError(str(e)) from e

    a_content = a.monomial_content()
    b_content = b.monomial_content()
    if any(x < y for x, y in zip(a_content, b_content)):
        raise ExactDivisionError(f"{b} does not divide {a}")
    a_strip = a.shift_monomial(b_content, subtract=True)
    b_strip = b.shift_monomial(b_content, subtract=True)
    domain = _domain(a_strip, b_strip)
    quotient, remainder = to_sympy(a_strip, domain).div(to_sympy(b_strip, domain))
    if not remainder.is_zero:
        raise ExactDivisionError(f"{b} does not divide {a}")
    return from_sympy(quotient, a.nvars)


def tuple_content(t: PolyTuple) -> SparsePoly:
    """
    GCD of all components of a tuple, scalar-normalized.

    Zero components do not contribute. The fold stops as soon as the running
    GCD becomes constant.
    """
    nonzero = [c for c in t.components if not c.is_zero]
    if not nonzero:
        raise PolynomialError("content of the zero tuple is undefined")
    # monomial components first: they shrink the running gcd cheaply
    nonzero.sort(key=lambda c: (len(c), c.total_degree()))

    def fold(acc: SparsePoly, c: SparsePoly) -> SparsePoly:
        if acc.is_constant:
            return acc
        return poly_gcd(acc, c)

    content = reduce(fold, nonzero[1:], normalize_scalar(nonzero[0]))
    if content.is_constant:
        return SparsePoly.one(t.nvars)
    return normalize_scalar(content)


def divide_tuple(t: PolyTuple, g: SparsePoly) -> PolyTuple:
    """Divide every component of ``t`` exactly by ``g``."""
    return PolyTuple(exact_divide(c, g) if not c.is_zero else c for c in t.components)


__all__ = [
    'ExactDivisionError',
    'poly_gcd',
    'exact_divide',
    'tuple_content',
    'divide_tuple',
    'normalize_scalar',
    'to_sympy',
    'from_sympy',
    'to_fraction',
]
