"""
Pullback divisor counts ``#(f_k^* H ∩ slice)`` over a panel of hyperplanes.

A family Gamma-converges only if, for every hyperplane ``H`` that does not
contain the image of the limit, the zeros of ``H∘f_k`` on complex lines
through the domain stay bounded in number as ``k`` grows. Hyperplanes that
contain the limit image are skipped, except on slices lying inside the
common divisor of a non-reduced limit: that is where bubbles concentrate.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..poly import GaussianRational, PolyTuple, SparsePoly
from ..quadrature import (
    ContourSpec,
    ContourVanishingError,
    PolydiskSpec,
    ResidualTooLargeError,
    zero_count_contour,
)
from .family import Domain, MapFamily, exact_point

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hyperplane:
    """``{sum_j a_j Z_j = 0}`` in P^N."""

    coefficients: Tuple[GaussianRational, ...]
    label: str

    @classmethod
    def coordinate(cls, index: int, size: int) -> "Hyperplane":
        coeffs = tuple(GaussianRational(1 if j == index else 0) for j in range(size))
        return cls(coeffs, f"Z_{index}")

    @classmethod
    def random(cls, rng: np.random.Generator, size: int, label: str) -> "Hyperplane":
        """Small Gaussian-integer coefficients, none of them zero."""
        coeffs = []
        for _ in range(size):
            re, im = 0, 0
            while re == 0 and im == 0:
                re, im = (int(v) for v in rng.integers(-5, 6, size=2))
            coeffs.append(GaussianRational(re, im))
        return cls(tuple(coeffs), label)

    def pullback(self, t: PolyTuple) -> SparsePoly:
        if len(t) != len(self.coefficients):
            raise ValueError(f"hyperplane in P^{len(self.coefficients) - 1} cannot pull back a map into P^{len(t) - 1}")
        total = SparsePoly.zero(t.nvars)
        for a, c in zip(self.coefficients, t.components):
            if not a.is_zero:
                total = total + c.scale(a)
        return total

    def contains_image(self, t: PolyTuple) -> bool:
        return self.pullback(t).is_zero

    def __str__(self) -> str:
        return self.label


def hyperplane_panel(size: int, random_count: int = 3, seed: int = 0) -> List[Hyperplane]:
    """The coordinate hyperplanes of P^(size-1) plus seeded random ones."""
    rng = np.random.default_rng(seed)
    panel = [Hyperplane.coordinate(j, size) for j in range(size)]
    panel += [Hyperplane.random(rng, size, f"H_{i}") for i in range(random_count)]
    return panel


@dataclass(frozen=True)
class Slice:
    """
    The complex line through ``base`` in direction ``z_direction``, cut to a disk.

    Attributes:
        base: Point of the line; its ``direction`` coordinate is the disk center
        direction: Varying coordinate
        radius: Disk radius
        on_content: The line lies inside the common divisor of the limit
        exact: ``base`` is a small-denominator rational point
    """

    base: Tuple[GaussianRational, ...]
    direction: int
    radius: float
    on_content: bool = False
    exact: bool = True

    def contour(self, nodes: int = 256, scale: float = 1.0) -> ContourSpec:
        return ContourSpec(complex(self.base[self.direction]), self.radius * scale, nodes)

    def restrict(self, h: SparsePoly):
        """``h`` along the line, as a one-variable polynomial or a callable."""
        n = len(self.base)
        if self.exact:
            subs = [
                SparsePoly.variable(0, 1) if i == self.direction else SparsePoly.constant(self.base[i], 1)
                for i in range(n)
            ]
            return h.compose(subs)
        base = np.array([complex(b) for b in self.base])

        def along(z: np.ndarray) -> np.ndarray:
            points = np.tile(base, (len(z), 1))
            points[:, self.direction] = z
            return h.evaluate(points)
        return along

    def embed(self, z: np.ndarray) -> np.ndarray:
        """Points of the line with the given coordinates along it."""
        base = np.array([complex(b) for b in self.base])
        points = np.tile(base, (len(z), 1))
        points[:, self.direction] = z
        return points

    def to_dict(self) -> Dict:
        return {
            'base': [str(b) for b in self.base],
            'direction': self.direction,
            'radius': self.radius,
            'on_content': self.on_content,
        }


def _radii(dom: Domain) -> np.ndarray:
    if isinstance(dom, PolydiskSpec):
        return np.asarray(dom.radii, dtype=float)
    return np.full(dom.dimension, dom.radius / np.sqrt(dom.dimension))


def slice_panel(
    dom: Domain,
    content: Optional[SparsePoly] = None,
    bases: int = 2,
    fraction: float = 0.5,
    seed: int = 0,
) -> List[Slice]:
    """
    Coordinate-direction slices through seeded base points of a domain.

    For a nonconstant ``content`` each direction along which it is constant
    also gets a slice through a point of ``{content = 0}``; such a slice lies
    inside the divisor.
    """
    n = dom.dimension
    center = np.asarray(dom.center, dtype=complex)
    radii = _radii(dom)
    rng = np.random.default_rng(seed)
    slices: List[Slice] = []
    for j in range(n):
        count = 1 if n == 1 else bases
        for _ in range(count):
            # generic bases: lines through the center may meet the limit's indeterminacy
            offsets = radii * 0.5 * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
            point = center + offsets
            point[j] = center[j]
            slices.append(Slice(exact_point(point, 64), j, float(fraction * radii[j])))
        if content is None or content.is_constant or content.degree_in(j) > 0:
            continue
        point = _point_on(content, center, radii, j)
        if point is not None:
            slices.append(Slice(tuple(GaussianRational.coerce(complex(v)) for v in point), j,
                                float(fraction * radii[j]), on_content=True, exact=False))
    return slices


def _point_on(content: SparsePoly, center: np.ndarray, radii: np.ndarray, direction: int) -> Optional[np.ndarray]:
    """A point of ``{content = 0}`` near the center, moving one coordinate other than ``direction``."""
    n = len(center)
    for i in range(n):
        if i == direction or content.degree_in(i) == 0:
            continue
        fixed = {l: complex(center[l]) for l in range(n) if l != i}
        univariate = content.restrict(fixed)
        roots = np.roots(univariate.univariate_coefficients(i))
        if len(roots) == 0:
            continue
        root = roots[np.argmin(np.abs(roots - center[i]))]
        if abs(root - center[i]) < radii[i]:
            point = center.copy()
            point[i] = root
            return point
    return None


@dataclass
class SliceCount:
    """Counts of one hyperplane on one slice, per k."""

    slice: Slice
    counts: Dict[int, Optional[int]] = field(default_factory=dict)
    perturbed: List[int] = field(default_factory=list)
    skipped: Optional[str] = None
    bounded: Optional[bool] = None

    def to_dict(self) -> Dict:
        return {
            'slice': self.slice.to_dict(),
            'counts': {str(k): v for k, v in sorted(self.counts.items())},
            'perturbed': list(self.perturbed),
            'skipped': self.skipped,
            'bounded': self.bounded,
        }


@dataclass
class DivisorCountReport:
    """Divisor counts of one hyperplane over a slice panel."""

    hyperplane: str
    coefficients: List[str]
    slices: List[SliceCount] = field(default_factory=list)
    skipped: Optional[str] = None
    bounded: Optional[bool] = None

    @property
    def counts(self) -> Dict[int, int]:
        """Largest count over the counted slices, per k."""
        out: Dict[int, int] = {}
        for sc in self.slices:
            if sc.skipped is not None:
                continue
            for k, c in sc.counts.items():
                if c is not None:
                    out[k] = max(out.get(k, 0), c)
        return dict(sorted(out.items()))

    def to_dict(self) -> Dict:
        return {
            'hyperplane': self.hyperplane,
            'coefficients': list(self.coefficients),
            'counts': {str(k): v for k, v in self.counts.items()},
            'slices': [s.to_dict() for s in self.slices],
            'skipped': self.skipped,
            'bounded': self.bounded,
        }


def counts_bounded(counts: Sequence[int]) -> Optional[bool]:
    """
    Whether a count sequence looks bounded in k.

    A sequence is unbounded when its second half exceeds everything in its
    first half and it grew at least at every other step.
    """
    if len(counts) < 2:
        return None
    half = len(counts) // 2
    head, tail = counts[:half], counts[half:]
    increases = sum(1 for a, b in zip(counts, counts[1:]) if b > a)
    if max(tail) > max(head) and increases >= half:
        return False
    return True


def _count_once(h, sl: Slice, residual_limit: float, perturbation: float, nodes: int):
    """Zero count on the slice circle, retrying once on a perturbed radius."""
    try:
        return zero_count_contour(h, sl.contour(nodes), residual_limit), False
    except (ContourVanishingError, ResidualTooLargeError) as exc:
        logger.debug(f"slice {sl.to_dict()}: {exc}; perturbing")
    try:
        return zero_count_contour(h, sl.contour(nodes, 1.0 + perturbation), residual_limit), True
    except (ContourVanishingError, ResidualTooLargeError) as exc:
        logger.warning(f"slice through {[str(b) for b in sl.base]} skipped: {exc}")
        return None, True


def divisor_count_bound(
    fam: MapFamily,
    hyperplane: Hyperplane,
    slices: Sequence[Slice],
    ks: Optional[Sequence[int]] = None,
    candidate: Optional[PolyTuple] = None,
    content: Optional[SparsePoly] = None,
    residual_limit: float = 0.1,
    perturbation: float = 1e-3,
    nodes: int = 256,
) -> DivisorCountReport:
    """
    Count the zeros of ``H∘f_k`` on each slice for each k.

    Args:
        fam: The family
        hyperplane: The hyperplane ``H``
        slices: Slice panel (see :func:`slice_panel`)
        ks: Indices (default: the family's range)
        candidate: Limit candidate; ``H`` is skipped when it contains its image
        content: Common divisor of the candidate; slices inside it are still
            counted when ``H`` contains the image
        residual_limit: Allowed distance of a winding integral from an integer
        perturbation: Relative radius change for the single retry on a slice
        nodes: Initial contour nodes

    Returns:
        DivisorCountReport with per-slice counts and bounded flags
    """
    ks = list(ks) if ks is not None else fam.ks()
    report = DivisorCountReport(hyperplane.label, [str(a) for a in hyperplane.coefficients])
    contains = candidate is not None and hyperplane.contains_image(candidate)
    nontrivial_content = content is not None and not content.is_constant
    if contains and not (nontrivial_content and any(s.on_content for s in slices)):
        report.skipped = "limit image lies in the hyperplane"
        logger.warning(f"{fam.name}: {hyperplane.label} contains the limit image; skipped")
        return report

    for sl in slices:
        sc = SliceCount(sl)
        report.slices.append(sc)
        if contains and not sl.on_content:
            sc.skipped = "limit image lies in the hyperplane"
            continue
        for k in ks:
            h = sl.restrict(hyperplane.pullback(fam.affine(k)))
            if isinstance(h, SparsePoly) and h.is_zero:
                sc.counts[k] = None
                continue
            count, perturbed = _count_once(h, sl, residual_limit, perturbation, nodes)
            sc.counts[k] = count
            if perturbed:
                sc.perturbed.append(k)
        valid = [c for c in sc.counts.values() if c is not None]
        if not valid:
            sc.skipped = "pullback vanishes on the slice or contours failed"
            continue
        sc.bounded = counts_bounded(valid)
        logger.debug(f"{fam.name}: {hyperplane.label} on slice {sl.direction}: counts {valid}")

    flags = [sc.bounded for sc in report.slices if sc.skipped is None]
    if not flags:
        report.skipped = report.skipped or "no slice could be counted"
    elif any(f is False for f in flags):
        report.bounded = False
    elif all(f is True for f in flags):
        report.bounded = True
    return report


__all__ = [
    'Hyperplane',
    'Slice',
    'SliceCount',
    'DivisorCountReport',
    'hyperplane_panel',
    'slice_panel',
    'counts_bounded',
    'divisor_count_bound',
]
