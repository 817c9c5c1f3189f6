"""
Bubble probing: where do the images of small spheres around a point go?

For a family converging away from a point ``a``, the images ``f_k`` of
ever smaller spheres around ``a`` accumulate on the fiber of the limit graph
over ``a``. Image points that stay away from the limit map's own values on
the same spheres are clustered; clusters that persist along the schedule
indicate a nonempty bubble.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import squareform

from ..config import MeroLabConfig, get_config
from ..poly import PolyTuple, evaluate_scaled
from .family import MapFamily
from .limits import rep_limit

logger = logging.getLogger(__name__)

# cap on the number of far points handed to the clustering
_MAX_CLUSTER_POINTS = 1500


def normalize_projective(values: np.ndarray) -> np.ndarray:
    """Unit vectors with the largest-modulus coordinate real and positive; zero rows become NaN."""
    norms = np.linalg.norm(values, axis=1, keepdims=True)
    out = np.full(values.shape, np.nan, dtype=complex)
    good = (norms[:, 0] > 0) & np.all(np.isfinite(values), axis=1)
    unit = values[good] / norms[good]
    pivot = unit[np.arange(len(unit)), np.argmax(np.abs(unit), axis=1)]
    out[good] = unit * (np.abs(pivot) / pivot)[:, None]
    return out


def fs_distance_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Fubini-Study sine distances between the rows of two sets of unit vectors."""
    overlap = np.abs(a @ b.conj().T)
    return np.sqrt(np.clip(1.0 - overlap ** 2, 0.0, 1.0))


def sphere_points(center: np.ndarray, radius: float, ladder: int = 32, phases: int = 8) -> np.ndarray:
    """
    Points on the sphere of radius ``radius`` around ``center``.

    In C^1 these are equispaced on the circle. In higher dimension every
    ordered pair of coordinates ``(i, j)`` contributes the directions
    ``cos t e_i + sin t e_j`` with ``t = (pi/2) 2^-m``, so directions hugging a
    coordinate axis are sampled at geometrically finer scales.
    """
    n = len(center)
    if n == 1:
        theta = 2 * np.pi * np.arange(ladder * phases) / (ladder * phases)
        return center + radius * np.exp(1j * theta)[:, None]
    ts = (np.pi / 2) * 2.0 ** -np.arange(ladder)
    angles = 2 * np.pi * np.arange(phases) / phases
    rows = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for t in ts:
                for a in angles:
                    v = np.zeros(n, dtype=complex)
                    v[i] = math.cos(t) * np.exp(1j * a)
                    v[j] = math.sin(t) * np.exp(1j * (a + np.pi / phases))
                    rows.append(v)
    return center + radius * np.array(rows)


def image_cloud(t: PolyTuple, points: np.ndarray) -> np.ndarray:
    values, _, _ = evaluate_scaled(t, points)
    return normalize_projective(values)


@dataclass
class CloudSummary:
    """Far image points of one sphere at one k."""

    radius: float
    k: int
    samples: int
    far: int
    cloud: np.ndarray = field(repr=False, default_factory=lambda: np.zeros((0, 0), dtype=complex))

    def to_dict(self) -> Dict:
        return {'radius': self.radius, 'k': self.k, 'samples': self.samples, 'far': self.far}


@dataclass
class Cluster:
    """A group of far image points."""

    size: int
    centroid: List[complex]
    vanishing: List[int]          # coordinates that vanish on the whole cluster
    diameter: float

    def to_dict(self) -> Dict:
        return {
            'size': self.size,
            'centroid': [[z.real, z.imag] for z in self.centroid],
            'vanishing': list(self.vanishing),
            'diameter': self.diameter,
        }


@dataclass
class BubbleReport:
    """
    Image clouds of shrinking spheres and their clusters.

    Attributes:
        base: The point ``a``
        radii: Decreasing radius schedule
        ks: Increasing index schedule
        clouds: One summary per radius and k
        clusters: Clusters of all far points
        nonempty: Far points persist along the schedule (``None``: inconclusive)
        status: ``nonempty``, ``empty`` or ``inconclusive``
        limit: Limit map used as reference
    """

    base: List[complex]
    radii: List[float]
    ks: List[int]
    clouds: List[CloudSummary] = field(default_factory=list)
    clusters: List[Cluster] = field(default_factory=list)
    nonempty: Optional[bool] = None
    status: str = "inconclusive"
    limit: Optional[str] = None
    message: str = ""

    def far_count(self, radius: float, k: int) -> int:
        for c in self.clouds:
            if c.radius == radius and c.k == k:
                return c.far
        raise KeyError((radius, k))

    def to_dict(self) -> Dict:
        return {
            'base': [[z.real, z.imag] for z in self.base],
            'radii': list(self.radii),
            'ks': list(self.ks),
            'clouds': [c.to_dict() for c in self.clouds],
            'clusters': [c.to_dict() for c in self.clusters],
            'nonempty': self.nonempty,
            'status': self.status,
            'limit': self.limit,
            'message': self.message,
        }


def _clusters(points: np.ndarray, separation: float) -> List[Cluster]:
    if len(points) == 0:
        return []
    if len(points) > _MAX_CLUSTER_POINTS:
        points = points[np.linspace(0, len(points) - 1, _MAX_CLUSTER_POINTS).astype(int)]
    if len(points) == 1:
        labels = np.array([1])
        dist = np.zeros((1, 1))
    else:
        dist = fs_distance_matrix(points, points)
        np.fill_diagonal(dist, 0.0)
        condensed = squareform((dist + dist.T) / 2, checks=False)
        labels = fcluster(linkage(condensed, method="single"), t=separation, criterion="distance")
    out = []
    for label in np.unique(labels):
        members = points[labels == label]
        idx = np.where(labels == label)[0]
        centroid = members.mean(axis=0)
        centroid = centroid / max(np.linalg.norm(centroid), 1e-300)
        vanishing = [i for i in range(points.shape[1]) if float(np.max(np.abs(members[:, i]))) < separation]
        diameter = float(dist[np.ix_(idx, idx)].max()) if len(idx) > 1 else 0.0
        out.append(Cluster(len(members), [complex(z) for z in centroid], vanishing, diameter))
    return sorted(out, key=lambda c: -c.size)


def _persistence(report: BubbleReport) -> Tuple[Optional[bool], str]:
    r_min, k_last = min(report.radii), max(report.ks)
    tail_ks = report.ks[len(report.ks) // 2:]
    checks = [report.far_count(r_min, k) > 0 for k in tail_ks]
    checks += [report.far_count(r, k_last) > 0 for r in report.radii]
    if all(checks):
        return True, "nonempty"
    if not any(checks):
        return False, "empty"
    return None, "inconclusive"


def bubble_probe(
    fam: MapFamily,
    a: Sequence[complex],
    radii: Sequence[float] = (0.2, 0.1, 0.05),
    ks: Optional[Sequence[int]] = None,
    config: Optional[MeroLabConfig] = None,
    ladder: int = 32,
    phases: int = 8,
) -> BubbleReport:
    """
    Sample ``f_k`` on spheres around ``a`` and cluster the images away from the limit.

    Args:
        fam: Family converging at least weakly away from ``a``
        a: Point of the affine source
        radii: Radius schedule (sorted decreasing)
        ks: Index schedule (default: the family's range)
        config: Cluster separation in Fubini-Study distance
        ladder: Direction scales per coordinate pair
        phases: Phases per direction

    Returns:
        BubbleReport; ``nonempty`` is ``None`` when the schedule gives mixed evidence
    """
    config = config or get_config()
    center = np.asarray([complex(z) for z in a])
    if len(center) != fam.nvars:
        raise ValueError(f"point has {len(center)} coordinates, the family has {fam.nvars} variables")
    radii = sorted((float(r) for r in radii), reverse=True)
    ks = sorted(ks) if ks is not None else fam.ks()
    report = BubbleReport([complex(z) for z in center], radii, list(ks))

    if fam.limit is not None:
        limit = fam.affine_of(fam.limit)
    else:
        found = rep_limit(fam, config=config)
        limit = found.candidate
    if limit is None:
        report.message = "no limit map to compare with"
        logger.warning(f"{fam.name}: bubble probe without a limit map")
        return report
    report.limit = str(limit)

    far_points = []
    for r in radii:
        points = sphere_points(center, r, ladder, phases)
        reference = image_cloud(limit, points)
        reference = reference[~np.isnan(reference).any(axis=1)]
        for k in ks:
            cloud = image_cloud(fam.affine(k), points)
            cloud = cloud[~np.isnan(cloud).any(axis=1)]
            if len(reference):
                nearest = fs_distance_matrix(cloud, reference).min(axis=1)
                far = cloud[nearest > config.cluster_separation]
            else:
                far = cloud
            report.clouds.append(CloudSummary(r, k, len(cloud), len(far), far))
            far_points.append(far)
            logger.debug(f"{fam.name}: r={r}, k={k}: {len(far)} of {len(cloud)} image points away from the limit")

    all_far = np.concatenate(far_points) if far_points else np.zeros((0, len(limit)), dtype=complex)
    report.clusters = _clusters(all_far, config.cluster_separation)
    report.nonempty, report.status = _persistence(report)
    logger.info(f"{fam.name}: bubble at {report.base} is {report.status} ({len(report.clusters)} clusters)")
    return report


__all__ = [
    'BubbleReport',
    'CloudSummary',
    'Cluster',
    'bubble_probe',
    'sphere_points',
    'normalize_projective',
    'fs_distance_matrix',
]
