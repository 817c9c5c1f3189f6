"""Reduction, composition, iteration and chart restriction of map representations."""

from typing import Optional, Sequence
import logging

from ..poly import (
    GaussianRational,
    Number,
    PolyTuple,
    SparsePoly,
    divide_tuple,
    poly_gcd,
    exact_divide,
    normalize_scalar,
    tuple_content,
)
from .base import (
    AffineRationalMap,
    DimensionMismatchError,
    HomogRep,
    ProjectiveMapError,
    UnsupportedMapError,
)

logger = logging.getLogger(__name__)


def reduce_rep(r: HomogRep) -> HomogRep:
    """
    Divide a representation by the GCD of its components.

    The result is scalar-normalized (first nonzero component has leading
    coefficient 1) and flagged reduced. Reducing a reduced rep is a no-op up
    to that normalization.

    Args:
        r: Representation with at least one nonzero component

    Returns:
        The reduced representation
    """
    if r.reduced:
        return r.normalized()
    content = tuple_content(r.tuple)
    if content.is_constant:
        reduced = r.tuple
    else:
        logger.debug(f"Stripping content {content} from {r}")
        reduced = divide_tuple(r.tuple, content)
    return HomogRep(reduced.normalized(), reduced=True, local=r.local, name=r.name)


def compose_raw(g: HomogRep, f: HomogRep) -> HomogRep:
    """Componentwise substitution ``g(f)`` without reduction."""
    if g.local:
        raise UnsupportedMapError("the outer map of a composition must be projective")
    if g.nvars != len(f.tuple):
        raise DimensionMismatchError(
            f"cannot compose: outer map has {g.nvars} variables, inner map has {len(f.tuple)} components"
        )
    components = [c.compose(list(f.components)) for c in g.components]
    return HomogRep(PolyTuple(components), local=f.local)


def compose_reduce(g: HomogRep, f: HomogRep) -> HomogRep:
    """
    Reduced representation of ``g o f``.

    Raises:
        DimensionMismatchError: If the target of ``f`` is not the source of ``g``
    """
    return reduce_rep(compose_raw(g, f))


def iterate_closed(f: HomogRep, k: int) -> HomogRep:
    """
    Reduced representation of the k-th iterate of a self-map.

    Monomial maps are iterated through exponent-matrix powers; everything else
    by repeated squaring of :func:`compose_reduce`.

    Args:
        f: Rational self-map of P^n
        k: Number of iterations, at least 1

    Returns:
        The reduced k-th iterate
    """
    if k < 1:
        raise ValueError(f"iteration count must be at least 1, got {k}")
    if not f.is_self_map:
        raise DimensionMismatchError(f"{f} is not a self-map of projective space")
    if f.is_monomial and all(not c.is_zero for c in f.components):
        from .monomial import MonomialMap

        return MonomialMap.from_rep(f).iterate(k)

    result: Optional[HomogRep] = None
    power = reduce_rep(f)
    while k:
        if k & 1:
            result = power if result is None else compose_reduce(result, power)
        k >>= 1
        if k:
            power = compose_reduce(power, power)
    return result


def algebraic_degree(r: HomogRep) -> int:
    """Common homogeneous degree of the reduced representation."""
    if r.local:
        raise UnsupportedMapError("algebraic degree is defined for projective representations only")
    return reduce_rep(r).degree


def dehomogenize(r: HomogRep, chart: int) -> PolyTuple:
    """Set the source variable ``chart`` to 1, keeping the others in order."""
    if r.local:
        raise UnsupportedMapError("a local representation is already affine")
    if not 0 <= chart < r.nvars:
        raise ValueError(f"chart {chart} out of range for {r.nvars} homogeneous variables")
    keep = [i for i in range(r.nvars) if i != chart]
    n = len(keep)
    substitutions = []
    for i in range(r.nvars):
        if i == chart:
            substitutions.append(SparsePoly.one(n))
        else:
            substitutions.append(SparsePoly.variable(keep.index(i), n))
    return PolyTuple(c.compose(substitutions) for c in r.components)


def restrict_chart(r: HomogRep, chart: int, target_chart: Optional[int] = None) -> AffineRationalMap:
    """
    Affine form of a map in a source chart and a target chart.

    The source chart sets homogeneous variable ``chart`` to 1 (ignored for
    local representations); target coordinates are the ratios of the other
    components to component ``target_chart`` (default: same index), with
    common factors of each numerator and denominator cancelled exactly.

    Args:
        r: Representation
        chart: Source chart index
        target_chart: Target chart index

    Returns:
        The chart map
    """
    target_chart = chart if target_chart is None else target_chart
    if not 0 <= target_chart < len(r.tuple):
        raise ValueError(f"target chart {target_chart} out of range")
    affine = r.tuple if r.local else dehomogenize(r, chart)
    denominator = affine[target_chart]
    if denominator.is_zero:
        raise ProjectiveMapError(f"component {target_chart} vanishes identically; chart U_{target_chart} misses the image")
    numerators, denominators = [], []
    for j, component in enumerate(affine.components):
        if j == target_chart:
            continue
        if component.is_zero:
            numerators.append(component)
            denominators.append(SparsePoly.one(affine.nvars))
            continue
        g = poly_gcd(component, denominator)
        num = exact_divide(component, g)
        den = exact_divide(denominator, g)
        # keep the denominator monic so equal maps print equally
        lead = den.leading_coefficient
        numerators.append(num.scale(GaussianRational(1) / lead))
        denominators.append(normalize_scalar(den))
    return AffineRationalMap(
        tuple(numerators),
        tuple(denominators),
        source_chart=None if r.local else chart,
        target_chart=target_chart,
    )


def local_lift(r: HomogRep, chart: Optional[int], center: Sequence[Number]) -> HomogRep:
    """
    Local representation of ``r`` around a point, in shifted coordinates.

    The source is dehomogenized in ``chart`` (skipped for local reps), the
    coordinates are translated so ``center`` becomes the origin, and the
    result is reduced.
    """
    affine = r.tuple if (r.local or chart is None) else dehomogenize(r, chart)
    shifted = PolyTuple(c.translate(list(center)) for c in affine.components)
    return reduce_rep(HomogRep(shifted, local=True, name=r.name))


__all__ = [
    'reduce_rep',
    'compose_raw',
    'compose_reduce',
    'iterate_closed',
    'algebraic_degree',
    'dehomogenize',
    'restrict_chart',
    'local_lift',
]
