"""Uniform separation of two pullback hypersurfaces along a family."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence
import logging
import math

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from ..config import MeroLabConfig, get_config
from ..poly import SparsePoly
from ..quadrature import ContourVanishingError, ResidualTooLargeError, locate_zeros
from .divisors import Hyperplane, Slice, slice_panel
from .family import Domain, MapFamily

logger = logging.getLogger(__name__)


@dataclass
class SeparationReport:
    """
    Sampled Hausdorff distance between ``f_k^* H0`` and ``f_k^* H1``.

    Attributes:
        hyperplanes: Labels of ``H0`` and ``H1``
        ks: Indices
        distances: Distance per k (``inf`` when a pullback has no sampled point)
        infimum: Smallest distance over k
        chart: Source chart of projective families
        slices: Number of slices sampled
        points: Sampled zero count of each pullback per k
    """

    hyperplanes: List[str]
    ks: List[int] = field(default_factory=list)
    distances: List[float] = field(default_factory=list)
    infimum: float = math.inf
    chart: Optional[int] = None
    slices: int = 0
    points: Dict[int, List[int]] = field(default_factory=dict)

    @property
    def separated(self) -> bool:
        return math.isfinite(self.infimum) and self.infimum > 0

    def to_dict(self) -> Dict:
        return {
            'hyperplanes': list(self.hyperplanes),
            'ks': list(self.ks),
            'distances': [_finite(d) for d in self.distances],
            'infimum': _finite(self.infimum),
            'chart': self.chart,
            'slices': self.slices,
            'points': {str(k): v for k, v in sorted(self.points.items())},
        }


def _finite(x: float) -> Optional[float]:
    return x if math.isfinite(x) else None


def _pullback_points(h: SparsePoly, slices: Sequence[Slice]) -> np.ndarray:
    """Zeros of ``h`` on every slice, embedded in C^n."""
    found = []
    for sl in slices:
        restricted = sl.restrict(h)
        if isinstance(restricted, SparsePoly) and (restricted.is_zero or restricted.is_constant):
            continue
        try:
            zeros = locate_zeros(restricted, sl.contour())
        except (ContourVanishingError, ResidualTooLargeError) as exc:
            logger.debug(f"no zeros located on slice {sl.direction}: {exc}")
            continue
        if len(zeros):
            found.append(sl.embed(zeros))
    if not found:
        return np.zeros((0, len(slices[0].base) if slices else 0), dtype=complex)
    return np.concatenate(found)


def _real(points: np.ndarray) -> np.ndarray:
    return np.concatenate([points.real, points.imag], axis=1)


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two finite point sets of C^n."""
    if len(a) == 0 or len(b) == 0:
        return math.inf
    ra, rb = _real(a), _real(b)
    return float(max(directed_hausdorff(ra, rb)[0], directed_hausdorff(rb, ra)[0]))


def uniform_separation(
    fam: MapFamily,
    h0: Hyperplane,
    h1: Hyperplane,
    chart: Optional[int] = None,
    ks: Optional[Sequence[int]] = None,
    dom: Optional[Domain] = None,
    config: Optional[MeroLabConfig] = None,
) -> SeparationReport:
    """
    Sample the pullbacks of two hyperplanes on a slice panel and measure their distance.

    Args:
        fam: The family
        h0: First hyperplane
        h1: Second hyperplane
        chart: Source chart for projective families (default: the family's)
        ks: Indices (default: the family's range)
        dom: Domain (default: the family's)
        config: Slice panel settings

    Returns:
        SeparationReport; the infimum is positive when the pullbacks stay apart
    """
    config = config or get_config()
    if chart is not None and not fam.is_local:
        fam = fam.with_chart(chart)
    dom = dom or fam.default_domain()
    ks = list(ks) if ks is not None else fam.ks()
    slices = slice_panel(dom, None, config.slice_bases, config.slice_fraction, config.seed)
    report = SeparationReport(
        [h0.label, h1.label], chart=None if fam.is_local else fam.source_chart, slices=len(slices)
    )
    for k in ks:
        t = fam.affine(k)
        zeros0 = _pullback_points(h0.pullback(t), slices)
        zeros1 = _pullback_points(h1.pullback(t), slices)
        distance = hausdorff(zeros0, zeros1)
        report.ks.append(k)
        report.distances.append(distance)
        report.points[k] = [len(zeros0), len(zeros1)]
        logger.debug(f"{fam.name}: k={k} separation {distance:.4g} ({len(zeros0)} / {len(zeros1)} points)")
    report.infimum = min(report.distances) if report.distances else math.inf
    logger.info(f"{fam.name}: separation of {h0.label} and {h1.label} has infimum {report.infimum:.4g}")
    return report


__all__ = ['SeparationReport', 'uniform_separation', 'hausdorff']
