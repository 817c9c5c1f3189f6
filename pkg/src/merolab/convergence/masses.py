"""Trends of the mixed Monge-Ampere masses along a family."""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np
from tqdm import tqdm

from ..config import MeroLabConfig, get_config
from ..poly import PolyTuple
from ..quadrature import MassReport, PolydiskSpec, QuadratureError, mixed_ma_masses
from .family import Domain, MapFamily
from .limits import reducedness_of_limit

logger = logging.getLogger(__name__)

CONVERGING = "converging"
DIVERGING = "diverging"
INCONCLUSIVE = "inconclusive"


@dataclass
class MassSeries:
    """Masses of one order along the sampled k, with the verdict on their trend."""

    order: int
    ks: List[int]
    values: List[float]
    errors: List[float]
    reference: Optional[float] = None       # the limit map's own mass
    reference_error: Optional[float] = None
    trend: str = INCONCLUSIVE
    variation: Optional[float] = None       # relative spread of the series
    message: str = ""

    def to_dict(self) -> Dict:
        return {
            'order': self.order,
            'ks': list(self.ks),
            'values': list(self.values),
            'errors': list(self.errors),
            'reference': self.reference,
            'reference_error': self.reference_error,
            'trend': self.trend,
            'variation': self.variation,
            'message': self.message,
        }


@dataclass
class MassConvergence:
    """Mass series for every order."""

    series: Dict[int, MassSeries] = field(default_factory=dict)

    @property
    def trend(self) -> str:
        trends = [s.trend for s in self.series.values()]
        if trends and all(t == CONVERGING for t in trends):
            return CONVERGING
        if any(t == DIVERGING for t in trends):
            return DIVERGING
        return INCONCLUSIVE

    def to_dict(self) -> Dict:
        return {
            'trend': self.trend,
            'series': {str(p): s.to_dict() for p, s in sorted(self.series.items())},
        }


def budgeted_domain(dom: Domain, config: MeroLabConfig) -> Domain:
    """The domain with the configured quadrature and sampling budget."""
    if isinstance(dom, PolydiskSpec):
        return replace(
            dom,
            radial_panels=config.radial_panels,
            nodes_per_panel=config.nodes_per_panel,
            angular_nodes=config.angular_nodes,
            samples=config.mc_samples,
        )
    return replace(dom, angular_nodes=config.angular_nodes, samples=config.mc_samples)


def _tube_radius(dom: Domain, config: MeroLabConfig) -> float:
    radius = min(dom.radii) if isinstance(dom, PolydiskSpec) else dom.radius
    return config.mass_eps * radius


def mass_trend(
    ks: Sequence[int],
    values: Sequence[float],
    errors: Sequence[float],
    reference: Optional[float] = None,
    reference_error: float = 0.0,
    tol: float = 0.05,
) -> Tuple[str, float, str]:
    """
    Classify a mass series as converging, diverging or inconclusive.

    A series converges when its spread is within ``tol`` of its size (plus
    twice the largest error bar) and, when a reference is given, its last value
    matches the reference. It diverges when a linear fit rises by more than
    that allowance, or when it settles away from the reference.

    Returns:
        ``(trend, relative variation, message)``
    """
    v = np.asarray(values, dtype=float)
    e = np.asarray(errors, dtype=float)
    if len(v) < 2:
        return INCONCLUSIVE, math.nan, "fewer than two masses"
    mean = abs(float(v.mean()))
    scale = mean if mean > 1e-9 else 1.0
    noise = 2.0 * float(e.max())
    spread = float(v.max() - v.min())
    variation = spread / scale
    stable = spread <= tol * scale + noise
    matches = None
    if reference is not None:
        allowance = tol * max(abs(reference), scale) + noise + 2.0 * reference_error
        matches = abs(float(v[-1]) - reference) <= allowance
    slope = float(np.polyfit(np.asarray(ks, dtype=float), v, 1)[0])
    growing = slope * (ks[-1] - ks[0]) > tol * scale + noise
    if stable and matches is not False:
        return CONVERGING, variation, "tail variation within tolerance"
    if growing:
        return DIVERGING, variation, "masses grow with k"
    if stable and matches is False:
        return DIVERGING, variation, f"masses settle away from the limit's own mass {reference:.4g}"
    return INCONCLUSIVE, variation, "masses neither settle nor grow"


def mass_convergence(
    fam: MapFamily,
    dom: Optional[Domain] = None,
    orders: Optional[Sequence[int]] = None,
    ks: Optional[Sequence[int]] = None,
    candidate: Optional[PolyTuple] = None,
    config: Optional[MeroLabConfig] = None,
) -> MassConvergence:
    """
    Mass series of every order along a family.

    Args:
        fam: The family
        dom: Domain (default: the family's), run with the configured budget
        orders: Orders to evaluate (default ``1..n``)
        ks: Indices (default: the last ``config.mass_points`` of the range)
        candidate: Limit candidate; when reduced, its own masses are the reference
        config: Tolerances and budgets

    Returns:
        MassConvergence with one series per order
    """
    config = config or get_config()
    dom = budgeted_domain(dom or fam.default_domain(), config)
    orders = list(orders) if orders is not None else list(range(1, dom.dimension + 1))
    ks = list(ks) if ks is not None else fam.ks()[-config.mass_points:]
    eps = _tube_radius(dom, config)
    cache: Dict[PolyTuple, Dict[int, MassReport]] = {}

    def masses_of(t: PolyTuple, law) -> Dict[int, MassReport]:
        if t not in cache:
            cache[t] = mixed_ma_masses(
                t, dom, orders=orders, eps=eps, ratio=config.eps_ratio,
                seed=config.seed, workers=config.workers, law=law,
            )
        return cache[t]

    results: Dict[int, Dict[int, MassReport]] = {}
    failures: Dict[int, str] = {}
    for k in tqdm(ks, desc=f"masses of {fam.name}", disable=not config.progress):
        try:
            results[k] = masses_of(fam.affine(k), fam.importance_law(k, dom))
        except (QuadratureError, ValueError, FloatingPointError) as exc:
            failures[k] = str(exc)
            logger.warning(f"{fam.name}: masses at k={k} failed: {exc}")

    reference: Optional[Dict[int, MassReport]] = None
    if candidate is not None and reducedness_of_limit(candidate).reduced:
        try:
            reference = masses_of(candidate, None)
        except (QuadratureError, ValueError, FloatingPointError) as exc:
            logger.warning(f"{fam.name}: masses of the limit failed: {exc}")

    out = MassConvergence()
    for p in orders:
        done = [k for k in ks if k in results]
        values = [results[k][p].value for k in done]
        errors = [results[k][p].error for k in done]
        series = MassSeries(p, done, values, errors)
        if reference is not None:
            series.reference = reference[p].value
            series.reference_error = reference[p].error
        if failures:
            series.message = "; ".join(f"k={k}: {msg}" for k, msg in sorted(failures.items()))
        else:
            series.trend, series.variation, series.message = mass_trend(
                done, values, errors, series.reference, series.reference_error or 0.0, config.mass_tol
            )
        out.series[p] = series
        logger.debug(f"{fam.name}: order-{p} masses {values} -> {series.trend}")
    return out


__all__ = ['MassSeries', 'MassConvergence', 'mass_convergence', 'mass_trend', 'budgeted_domain']
