"""
Graph volumes of the iterates of ``[z0^2 z1 : z1^3 : z0^2 z2]`` near ``p = [1:0:0]``.

In the chart ``U_0`` the k-th iterate is ``(u1^N, u2 / u1^(N-1))`` with
``N = 2^k``. It preserves the vertical lines, so the target can be taken to be
``C x P^1`` with the flat form on the first factor and the Fubini-Study form
on the second. The pulled-back form has potential

    |u1^N|^2 + log(|u1^(N-1)|^2 + |u2|^2)

and both mixed integrals over the bidisk of radius ``eps`` reduce, after the
``u2`` integration, to one-dimensional integrals in ``r1 = |u1|``:

- the order-one integral ``int (f^k)^* w ^ dd^c |u|^2`` stays bounded and tends
  to ``eps^2``;
- the order-two integral ``int (f^k)^* w^2`` tends to zero, below
  ``2^(2k+2) eps^(2^(k+1)-2) / (2^(k+1)-2)``.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence
import logging
import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from ..config import MeroLabConfig, get_config
from ..poly import PolyTuple, SparsePoly
from ..quadrature import (
    LogNormPotential,
    PolydiskSpec,
    QuadratureError,
    SquaredNormPotential,
    SumPotential,
    mixed_ma_masses,
)

logger = logging.getLogger(__name__)

RADIAL = "radial-closed-form"
GENERAL = "general-quadrature"


@dataclass
class GammaVolumeSeries:
    """
    The two mixed integrals per k over the bidisk of radius ``eps``.

    Attributes:
        eps: Bidisk radius
        ks: Iterate indices
        first: Order-one integrals
        second: Order-two integrals
        first_errors: Quadrature error estimates of ``first``
        second_errors: Quadrature error estimates of ``second``
        second_bounds: Closed upper bounds of ``second``
        first_limit: Limit of ``first`` as k grows
        method: Tag of the backend that produced the series
        cross_checks: General-quadrature values per checked k
        notes: Per-k quadrature warnings
    """

    eps: float
    ks: List[int] = field(default_factory=list)
    first: List[float] = field(default_factory=list)
    second: List[float] = field(default_factory=list)
    first_errors: List[float] = field(default_factory=list)
    second_errors: List[float] = field(default_factory=list)
    second_bounds: List[float] = field(default_factory=list)
    first_limit: float = 0.0
    method: str = RADIAL
    cross_checks: Dict[int, Dict[str, float]] = field(default_factory=dict)
    notes: Dict[int, str] = field(default_factory=dict)

    def agreement(self) -> Optional[float]:
        """Largest relative difference between the two methods, over the checked k."""
        diffs = [max(c['first_relative'], c['second_relative']) for c in self.cross_checks.values()]
        return max(diffs) if diffs else None

    def to_dict(self) -> Dict:
        return {
            'eps': self.eps,
            'ks': list(self.ks),
            'first': list(self.first),
            'second': list(self.second),
            'first_errors': list(self.first_errors),
            'second_errors': list(self.second_errors),
            'second_bounds': list(self.second_bounds),
            'first_limit': self.first_limit,
            'method': self.method,
            'cross_checks': {str(k): dict(sorted(v.items())) for k, v in sorted(self.cross_checks.items())},
            'agreement': self.agreement(),
            'notes': {str(k): v for k, v in sorted(self.notes.items())},
        }


def _first_density(r: float, k: int, eps: float) -> float:
    """Integrand in ``r1`` of the order-one integral."""
    if r <= 0.0:
        return 0.0
    n = 2 ** k
    m = n - 1
    lr = math.log(r)
    lc = 2 * m * lr
    le = 2 * math.log(eps)
    lce = float(np.logaddexp(lc, le))
    flat = 2.0 * n * n * eps * eps * math.exp((2 * m + 1) * lr)
    vertical = 2.0 * math.exp(le + lr - lce)
    mixed = 2.0 * m * m * math.exp((2 * m - 1) * lr) * ((lce - lc) - math.exp(le - lce))
    return flat + vertical + mixed


def _second_density(r: float, k: int, eps: float) -> float:
    """Integrand in ``r1`` of the order-two integral."""
    if r <= 0.0:
        return 0.0
    n = 2 ** k
    m = n - 1
    lr = math.log(r)
    le = 2 * math.log(eps)
    lce = float(np.logaddexp(2 * m * lr, le))
    return 4.0 * n * n * math.exp(le + (2 * m + 1) * lr - lce)


def second_bound(k: int, eps: float) -> float:
    """``2^(2k+2) eps^(2^(k+1)-2) / (2^(k+1)-2)``."""
    top = 2 ** (k + 1) - 2
    return math.exp((2 * k + 2) * math.log(2) + top * math.log(eps) - math.log(top))


def _radial(density, k: int, eps: float) -> tuple:
    # iterates concentrate near r1 = eps
    m = 2 ** k - 1
    breaks = [eps * (1.0 - 1.0 / (2 * m + 2))]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, error = quad(density, 0.0, eps, args=(k, eps), points=breaks, limit=200,
                            epsabs=1e-14, epsrel=1e-10)
    note = "; ".join(str(w.message).splitlines()[0] for w in caught if issubclass(w.category, IntegrationWarning))
    return value, error, note


def iterate_potential(k: int) -> SumPotential:
    """``|u1^N|^2 + log(|u1^(N-1)|^2 + |u2|^2)`` on C^2."""
    n = 2 ** k
    flat = PolyTuple([SparsePoly.monomial((n, 0), 1)])
    vertical = PolyTuple([SparsePoly.monomial((n - 1, 0), 1), SparsePoly.monomial((0, 1), 1)])
    return SumPotential([SquaredNormPotential(2, lift=flat), LogNormPotential(vertical)])


def general_volumes(k: int, eps: float, config: Optional[MeroLabConfig] = None) -> Dict[str, float]:
    """Both integrals at one k from the general mixed-mass quadrature."""
    config = config or get_config()
    # the density depends on |u1| and |u2| only; few angular nodes are exact
    dom = PolydiskSpec((0j, 0j), (eps, eps), radial_panels=2 * config.radial_panels,
                       nodes_per_panel=config.nodes_per_panel + 4, angular_nodes=4)
    masses = mixed_ma_masses(iterate_potential(k), dom, orders=[1, 2], workers=config.workers)
    return {
        'first': masses[1].value,
        'first_error': masses[1].error,
        'second': masses[2].value,
        'second_error': masses[2].error,
    }


def gamma_volume_series(
    ks: Optional[Sequence[int]] = None,
    eps: float = 0.5,
    cross_check: Sequence[int] = (1, 2),
    config: Optional[MeroLabConfig] = None,
) -> GammaVolumeSeries:
    """
    Order-one and order-two graph volumes of the iterates over the bidisk.

    Args:
        ks: Iterate indices (default ``1..8``)
        eps: Bidisk radius, in (0, 1)
        cross_check: Indices also integrated by the general mixed-mass quadrature
        config: Budgets of the cross-check

    Returns:
        GammaVolumeSeries with closed bounds and cross-checks
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    ks = list(ks) if ks is not None else list(range(1, 9))
    if any(k < 1 for k in ks):
        raise ValueError(f"iterate indices must be positive, got {ks}")
    series = GammaVolumeSeries(eps=eps, ks=ks, first_limit=eps * eps)
    for k in ks:
        first, first_error, note1 = _radial(_first_density, k, eps)
        second, second_error, note2 = _radial(_second_density, k, eps)
        series.first.append(first)
        series.second.append(second)
        series.first_errors.append(first_error)
        series.second_errors.append(second_error)
        series.second_bounds.append(second_bound(k, eps))
        if note1 or note2:
            series.notes[k] = "; ".join(n for n in (note1, note2) if n)
            logger.warning(f"k={k}: {series.notes[k]}")
        logger.debug(f"k={k}: first {first:.6g}, second {second:.6g}")

    for k in cross_check:
        try:
            general = general_volumes(k, eps, config)
        except QuadratureError as exc:
            series.notes[k] = f"cross-check failed: {exc}"
            logger.warning(f"k={k}: general quadrature failed: {exc}")
            continue
        first, second = _radial(_first_density, k, eps)[0], _radial(_second_density, k, eps)[0]
        general['first_relative'] = abs(general['first'] - first) / max(abs(first), 1e-300)
        general['second_relative'] = abs(general['second'] - second) / max(abs(second), 1e-300)
        series.cross_checks[k] = general
    logger.info(f"Volume series over the {eps}-bidisk for k = {ks[0]}..{ks[-1]}")
    return series


__all__ = [
    'GammaVolumeSeries',
    'gamma_volume_series',
    'general_volumes',
    'iterate_potential',
    'second_bound',
    'RADIAL',
    'GENERAL',
]
