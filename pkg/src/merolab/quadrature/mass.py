"""
Mixed non-pluripolar Monge-Ampere masses and graph volumes.

For ``u = log ||F||^2`` the order-p mass over a domain ``U`` is the integral of
``(dd^c u)^p ^ (dd^c |z|^2)^(n-p)`` over ``U`` minus an eps-tube around the
zero set of ``F``. Its density is ``p! (n-p)! e_p(H) / pi^n`` where ``H`` is the
complex Hessian of ``u``. Masses are evaluated along the schedule
``eps, eps/2, eps/4`` and Richardson-extrapolated to ``eps -> 0``.
"""

from itertools import combinations
from math import comb, factorial, pi
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np

from ..poly import PolyTuple, poly_gcd
from .base import (
    BallSpec,
    DensitySignError,
    MassReport,
    PolydiskSpec,
    ZeroLocus,
    elementary_symmetric,
    map_chunks,
    mass_constant,
)
from .lift import LogNormPotential, Potential, RashkovskiiPotential, as_potential
from .montecarlo import LogRadialLaw, integrate
from .rules import ball_rule_c2, polydisk_rule

logger = logging.getLogger(__name__)

Domain = Union[PolydiskSpec, BallSpec]

# a q outside this window means the eps series is not in its asymptotic regime
_RICHARDSON_ORDER_RANGE = (0.25, 8.0)


def zero_locus_of(t: PolyTuple) -> ZeroLocus:
    """
    Common zero set of a polynomial tuple, when it can be written down exactly.

    Monomial tuples vanish on a union of coordinate subspaces ``{z_S = 0}``;
    the minimal index sets ``S`` are returned. Tuples in one variable give the
    roots of their GCD. Other tuples return an empty locus.
    """
    n = t.nvars
    components = [c for c in t.components if not c.is_zero]
    if not components:
        raise ValueError("the zero tuple vanishes everywhere")
    if all(c.is_monomial for c in components):
        supports = [{i for i, e in enumerate(c.leading_term[0]) if e > 0} for c in components]
        minimal: List[Tuple[int, ...]] = []
        for size in range(1, n + 1):
            for subset in combinations(range(n), size):
                s = set(subset)
                if all(sup & s for sup in supports) and not any(set(m) <= s for m in minimal):
                    minimal.append(subset)
        origin = (0j,) * n
        points = tuple(origin for s in minimal if len(s) == n)
        subspaces = tuple((origin, s) for s in minimal if len(s) < n)
        return ZeroLocus(points=points, subspaces=subspaces)
    if n == 1:
        g = components[0]
        for c in components[1:]:
            g = poly_gcd(g, c)
        if g.is_constant:
            return ZeroLocus()
        roots = np.roots(g.univariate_coefficients(0))
        return ZeroLocus(points=tuple((complex(r),) for r in roots))
    logger.debug(f"No exact zero locus for {t}; no tube is excluded")
    return ZeroLocus()


def _default_locus(potential: Potential) -> ZeroLocus:
    if isinstance(potential, LogNormPotential) and potential.lift.is_polynomial:
        return zero_locus_of(potential.lift.poly)
    if isinstance(potential, RashkovskiiPotential) and potential.eps == 0:
        return ZeroLocus(points=((0j, 0j, 0j),))
    return ZeroLocus()


def _densities(
    potential: Potential,
    points: np.ndarray,
    orders: Sequence[int],
    density_tol: float,
) -> np.ndarray:
    """Order-p densities against Lebesgue measure, shape ``(m, len(orders))``."""
    n = points.shape[1]
    hess = potential.hessian(points)
    eigs = np.linalg.eigvalsh(hess)
    scale = np.maximum(1.0, np.abs(eigs).max(axis=1))
    out = np.empty((len(points), len(orders)))
    for col, p in enumerate(orders):
        e_p = elementary_symmetric(eigs, p)
        floor = -density_tol * scale ** p
        bad = e_p < floor
        if np.any(bad):
            worst = int(np.argmin(e_p - floor))
            raise DensitySignError(
                f"order-{p} density {e_p[worst]:.3e} < 0 at {points[worst]}; the Hessian is not positive"
            )
        out[:, col] = mass_constant(n, p) * np.maximum(e_p, 0.0)
    return np.nan_to_num(out, nan=0.0, posinf=0.0, neginf=0.0)


def _plan(dom: Domain, locus: ZeroLocus, eps: float):
    """Split an eps-tube into inner radii of the product rule plus a residual mask."""
    if eps <= 0 or locus.is_empty:
        return None, None
    center = tuple(complex(c) for c in dom.center)
    if isinstance(dom, BallSpec):
        if locus.points == (center,) and not locus.subspaces:
            return eps, None
        return 0.0, locus
    inner = [0.0] * dom.dimension
    masked = []
    for point, coords in locus.subspaces:
        if len(coords) == 1 and complex(point[coords[0]]) == center[coords[0]]:
            inner[coords[0]] = eps
        else:
            masked.append((point, coords))
    residual = ZeroLocus(points=locus.points, subspaces=tuple(masked))
    return tuple(inner), (None if residual.is_empty else residual)


def _rule(dom: Domain, coarse: bool, inner) -> Iterable[Tuple[np.ndarray, np.ndarray]]:
    if isinstance(dom, BallSpec):
        if dom.dimension == 1:
            disk = PolydiskSpec(dom.center, (dom.radius,), radial_panels=max(2, dom.radial_nodes // 8),
                                angular_nodes=dom.angular_nodes)
            return polydisk_rule(disk, coarse, None if inner is None else (inner,))
        return ball_rule_c2(dom, coarse, inner or 0.0)
    return polydisk_rule(dom, coarse, inner)


def _quadrature(potential, dom, orders, eps, locus, coarse, density_tol, workers) -> np.ndarray:
    inner, mask = _plan(dom, locus, eps)

    def block(item):
        points, weights = item
        keep = np.ones(len(points), dtype=bool) if mask is None else mask.distance(points) >= eps
        if not np.any(keep):
            return np.zeros(len(orders))
        dens = _densities(potential, points[keep], orders, density_tol)
        return weights[keep] @ dens

    sums = map_chunks(block, _rule(dom, coarse, inner), workers)
    return np.sum(sums, axis=0)


def _monte_carlo(potential, dom, orders, eps, locus, density_tol, seed, workers, progress, law):
    if law is None and not locus.is_empty:
        focus = locus.points[0] if locus.points else locus.subspaces[0][0]
        outer = dom.radius if isinstance(dom, BallSpec) else max(dom.radii)
        floor = max(eps / 8, 1e-9 * outer)
        law = LogRadialLaw(focus, (floor,) * dom.dimension, (2 * outer,) * dom.dimension)

    def integrand(points: np.ndarray) -> np.ndarray:
        dens = _densities(potential, points, orders, density_tol)
        if eps > 0 and not locus.is_empty:
            dens[locus.distance(points) < eps] = 0.0
        return dens

    return integrate(integrand, dom, dom.samples, seed=seed, workers=workers, law=law, progress=progress)


def _evaluate(potential, dom, orders, eps, locus, density_tol, seed, workers, progress, law):
    """Values and error estimates per order at one tube radius."""
    if dom.dimension <= 2:
        fine = _quadrature(potential, dom, orders, eps, locus, False, density_tol, workers)
        coarse = _quadrature(potential, dom, orders, eps, locus, True, density_tol, workers)
        return fine, np.abs(fine - coarse), "gauss-legendre"
    result = _monte_carlo(potential, dom, orders, eps, locus, density_tol, seed, workers, progress, law)
    return result.values, result.errors, "monte-carlo"


def richardson(series: Sequence[float], ratio: float = 2.0) -> Tuple[float, float, bool]:
    """
    Extrapolate ``m(eps) = m0 + C eps^q`` from three values at ``eps, eps/r, eps/r^2``.

    Returns:
        ``(value, correction, stable)``; ``stable`` is False when the observed
        order ``q`` is not positive and moderate, in which case the finest
        value is returned unchanged
    """
    m1, m2, m3 = series[-3:]
    d1, d2 = m1 - m2, m2 - m3
    if d2 == 0:
        return m3, 0.0, d1 == 0 or abs(d1) < 1e-14
    rho = d1 / d2
    if not rho > 1:
        return m3, 0.0, False
    q = math.log(rho) / math.log(ratio)
    if not _RICHARDSON_ORDER_RANGE[0] <= q <= _RICHARDSON_ORDER_RANGE[1]:
        return m3, 0.0, False
    correction = (m3 - m2) / (ratio ** q - 1)
    return m3 + correction, correction, True


def mixed_ma_masses(
    F,
    dom: Domain,
    orders: Optional[Sequence[int]] = None,
    eps: float = 0.0,
    zero_locus: Optional[ZeroLocus] = None,
    extrapolate: bool = True,
    ratio: float = 2.0,
    seed: int = 0,
    workers: int = 1,
    density_tol: float = 1e-8,
    progress: bool = False,
    law: Optional[LogRadialLaw] = None,
) -> Dict[int, MassReport]:
    """
    All requested mixed masses of ``log ||F||^2`` from one set of nodes.

    Args:
        F: Potential, lift, tuple or representation
        dom: Polydisk or ball
        orders: Orders ``p`` in ``0..n`` (default ``1..n``)
        eps: Finest-schedule tube radius; 0 integrates over the whole domain
        zero_locus: Set to exclude (default: exact for polynomial tuples)
        extrapolate: Run the ``eps, eps/r, eps/r^2`` schedule
        ratio: Schedule ratio ``r``
        seed: Monte Carlo seed (domains of dimension 3 and up)
        workers: Threads for node blocks or sample streams
        density_tol: Relative tolerance of the density sign check
        progress: Progress bar for Monte Carlo runs
        law: Importance law for Monte Carlo (default: log-radial around the locus)

    Returns:
        Mapping from order to MassReport

    Raises:
        DensitySignError: A density is negative beyond tolerance
    """
    potential = as_potential(F)
    n = potential.nvars
    if dom.dimension != n:
        raise ValueError(f"domain has dimension {dom.dimension}, potential has {n} variables")
    orders = list(range(1, n + 1)) if orders is None else list(orders)
    if any(not 0 <= p <= n for p in orders):
        raise ValueError(f"orders must lie in 0..{n}, got {orders}")
    locus = _default_locus(potential) if zero_locus is None else zero_locus
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")

    schedule = [eps]
    if extrapolate and eps > 0 and not locus.is_empty:
        schedule = [eps, eps / ratio, eps / ratio ** 2]

    values, errors = [], []
    method = "gauss-legendre"
    for e in schedule:
        v, err, method = _evaluate(potential, dom, orders, e, locus, density_tol, seed, workers, progress, law)
        values.append(v)
        errors.append(err)
        logger.debug(f"Masses at eps={e:g}: {dict(zip(orders, v))}")

    budget = dom.samples if method == "monte-carlo" else _node_budget(dom)
    reports = {}
    for col, p in enumerate(orders):
        series = [float(v[col]) for v in values]
        value, error, extrapolated = series[-1], float(errors[-1][col]), False
        if len(series) == 3:
            value, correction, extrapolated = richardson(series, ratio)
            if extrapolated:
                error += abs(correction)
            else:
                error += abs(series[-1] - series[-2])
                logger.warning(f"Order-{p} mass does not stabilize over eps {schedule}: {series}")
        reports[p] = MassReport(
            value=value,
            error=error,
            order=p,
            eps=schedule[-1],
            extrapolated=extrapolated,
            method=method,
            seed=seed if method == "monte-carlo" else None,
            budget=budget,
            series=series,
        )
    return reports


def _node_budget(dom: Domain) -> int:
    if isinstance(dom, BallSpec):
        return dom.radial_nodes * dom.radial_nodes // 2 * dom.angular_nodes ** 2 if dom.dimension == 2 else 0
    per_disk = dom.radial_panels * dom.nodes_per_panel * dom.angular_nodes
    return per_disk ** dom.dimension


def mixed_ma_mass(F, dom: Domain, p: int, eps: float = 0.0, **kwargs) -> MassReport:
    """Order-p mixed non-pluripolar mass; see :func:`mixed_ma_masses`."""
    if p < 1:
        raise ValueError(f"order must be at least 1, got {p}")
    return mixed_ma_masses(F, dom, orders=[p], eps=eps, **kwargs)[p]


def euclidean_mass(dom: Domain) -> float:
    """Order-0 mass: ``n! / pi^n`` times the Lebesgue volume."""
    n = dom.dimension
    return factorial(n) / pi ** n * dom.volume


def graph_volume(F, dom: Domain, eps: float = 0.0, **kwargs) -> MassReport:
    """
    Volume of the graph of ``F`` over the domain.

    The graph volume is ``sum_p C(n, p) M_p`` where ``M_0`` is the Euclidean
    mass and ``M_p`` the order-p mixed mass of ``log ||F||^2``.
    """
    potential = as_potential(F)
    n = potential.nvars
    masses = mixed_ma_masses(potential, dom, orders=list(range(1, n + 1)), eps=eps, **kwargs)
    base = euclidean_mass(dom)
    value = base + sum(comb(n, p) * masses[p].value for p in masses)
    error = sum(comb(n, p) * masses[p].error for p in masses)
    first = next(iter(masses.values()))
    logger.info(f"Graph volume {value:.6f} +- {error:.1e} over {dom}")
    return MassReport(
        value=value,
        error=error,
        order=n,
        eps=first.eps,
        extrapolated=all(m.extrapolated for m in masses.values()),
        method=first.method,
        seed=first.seed,
        budget=first.budget,
        series=[base] + [masses[p].value for p in sorted(masses)],
    )


__all__ = [
    'zero_locus_of',
    'richardson',
    'mixed_ma_masses',
    'mixed_ma_mass',
    'euclidean_mass',
    'graph_volume',
]
