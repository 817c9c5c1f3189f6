"""
Membership of points in the Fatou sets of a self-map of P^2.

Four sets are compared:

- ``Phi``: points with a neighborhood on which the iterates are equicontinuous
  for the Fubini-Study metric, and whose forward orbit avoids the
  indeterminacy set;
- ``Phi_s``, ``Phi_w``, ``Phi_Gamma``: points with a neighborhood on which
  every sequence of iterates has a subsequence converging strongly, weakly or
  in the Gamma sense.

Normality is probed along residue classes ``k = r (mod stride)``, which is what
separates periodic maps such as the Cremona involution from divergent ones.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..config import MeroLabConfig, get_config
from ..convergence import Level, MapFamily, Verdict, classify
from ..projective import HomogRep, MonomialMap, hits_indeterminacy, iterate_closed
from .orbits import CONVERGED, INDETERMINATE, fs_diameter, numeric_orbit, point_name
from .scan import EXPANSION, ChartGrid, monomial_of

logger = logging.getLogger(__name__)

SETS = ('fatou', 'strong', 'weak', 'gamma')

# convergence level -> Fatou sets it places a point in
_LEVEL_SETS = {
    Level.STRONG: {'strong', 'weak', 'gamma'},
    Level.WEAK: {'weak', 'gamma'},
    Level.GAMMA: {'gamma'},
    Level.DIVERGENT: set(),
}


@dataclass
class Membership:
    """
    Where one point lies.

    Attributes:
        point: Affine coordinates in the chart
        chart: Source chart
        fatou: Member of ``Phi`` (``None``: undecided)
        strong: Member of ``Phi_s``
        weak: Member of ``Phi_w``
        gamma: Member of ``Phi_Gamma``
        level: Best convergence level of the local iterate families
        stride: Stride whose residue classes reached ``level``
        preimage_step: Step at which the exact zero pattern reaches the indeterminacy set
        orbit_limits: Limit names per residue class of the point's own orbit
        verdicts: Local verdicts per residue class of the chosen stride
    """

    point: List[complex]
    chart: int
    fatou: Optional[bool] = None
    strong: Optional[bool] = None
    weak: Optional[bool] = None
    gamma: Optional[bool] = None
    level: Level = Level.INCONCLUSIVE
    stride: Optional[int] = None
    preimage_step: Optional[int] = None
    orbit_limits: List[Optional[str]] = field(default_factory=list)
    verdicts: List[Verdict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def member(self, name: str) -> Optional[bool]:
        if name not in SETS:
            raise KeyError(name)
        return getattr(self, name)

    def to_dict(self) -> Dict:
        return {
            'point': [[z.real, z.imag] for z in self.point],
            'chart': self.chart,
            'fatou': self.fatou,
            'strong': self.strong,
            'weak': self.weak,
            'gamma': self.gamma,
            'level': self.level.value,
            'stride': self.stride,
            'preimage_step': self.preimage_step,
            'orbit_limits': list(self.orbit_limits),
            'verdicts': [{'family': v.family, 'level': v.level.value, 'reason': v.reason} for v in self.verdicts],
            'notes': list(self.notes),
        }


@dataclass
class InclusionReport:
    """Memberships of a batch of points and the inclusions they witness."""

    map: str
    chart: int
    radius: float
    members: int
    strides: List[int]
    memberships: List[Membership] = field(default_factory=list)

    def indices(self, name: str) -> List[int]:
        """Points decided to lie in the named set."""
        return [i for i, m in enumerate(self.memberships) if m.member(name) is True]

    def violations(self) -> List[str]:
        """Points breaking ``Phi <= Phi_s <= Phi_w <= Phi_Gamma``."""
        out = []
        for i, m in enumerate(self.memberships):
            for smaller, larger in zip(SETS, SETS[1:]):
                if m.member(smaller) is True and m.member(larger) is False:
                    out.append(f"point {i}: in {smaller} but not in {larger}")
        return out

    def strict(self) -> Dict[str, List[int]]:
        """Witnesses of strict inclusions: points in the larger set only."""
        out = {}
        for smaller, larger in zip(SETS, SETS[1:]):
            out[f"{smaller}<{larger}"] = [
                i for i, m in enumerate(self.memberships)
                if m.member(larger) is True and m.member(smaller) is False
            ]
        return out

    def to_dict(self) -> Dict:
        return {
            'map': self.map,
            'chart': self.chart,
            'radius': self.radius,
            'members': self.members,
            'strides': list(self.strides),
            'memberships': [m.to_dict() for m in self.memberships],
            'sets': {name: self.indices(name) for name in SETS},
            'strict': self.strict(),
            'violations': self.violations(),
        }


def _zero_pattern(point: Sequence[complex]) -> List[int]:
    return [i for i, z in enumerate(point) if z == 0]


def _class_indices(ks: Sequence[int], stride: int) -> List[List[int]]:
    return [[i for i, k in enumerate(ks) if k % stride == r] for r in range(stride)]


def _residue_limits(coordinates: Sequence[Sequence[complex]], ks: Sequence[int], stride: int,
                    window: int, tol: float) -> Optional[List[List[complex]]]:
    """Limit point of each residue class of an orbit, or ``None`` if one class does not settle."""
    limits = []
    for idx in _class_indices(ks, stride):
        tail = [coordinates[i] for i in idx][-window:]
        if len(tail) < min(window, 2) or fs_diameter(tail) >= tol:
            return None
        limits.append(list(tail[-1]))
    return limits


def _neighbors(affine: np.ndarray, perturbation: float) -> List[np.ndarray]:
    """Multiplicative and additive perturbations of a point."""
    out = [affine]
    for j in range(len(affine)):
        for sign in (1.0, -1.0):
            for moved in (affine[j] * (1.0 + sign * perturbation), affine[j] + sign * perturbation):
                sample = affine.copy()
                sample[j] = moved
                out.append(sample)
    return out


def fatou_membership(
    f: HomogRep,
    affine: Sequence[complex],
    chart: int = 0,
    strides: Sequence[int] = (1, 2),
    config: Optional[MeroLabConfig] = None,
    monomial: Optional[MonomialMap] = None,
) -> Tuple[Optional[bool], Optional[int], List[Optional[str]], List[str]]:
    """
    Decide membership in ``Phi`` from orbits of the point and its neighbors.

    The point is in ``Phi`` when, for some stride, every residue class of
    every neighbor's orbit settles and corresponding limits agree within
    ``fs_tol`` or within ``EXPANSION`` times the spread of the neighbors
    themselves. Points whose exact zero pattern reaches the indeterminacy set
    of a monomial map are excluded outright.

    Returns:
        ``(member, preimage_step, orbit_limits, notes)``
    """
    config = config or get_config()
    grid = ChartGrid(chart=chart)
    center = np.asarray([complex(z) for z in affine])
    point = grid.homogeneous(center)
    notes: List[str] = []

    preimage = None
    if monomial is not None:
        preimage = hits_indeterminacy(monomial, frozenset(_zero_pattern(point)))
        if preimage is not None:
            notes.append(f"orbit meets the indeterminacy set at step {preimage}")
            return False, preimage, [], notes

    starts = [grid.homogeneous(s) for s in _neighbors(center, config.perturbation)]
    records = [numeric_orbit(f, s, config=config) for s in starts]
    # limits may keep the neighbors' spread but not widen it
    allowed = max(config.fs_tol, EXPANSION * fs_diameter(starts))
    hits = [r for r in records if r.status == INDETERMINATE]
    if records[0].status == INDETERMINATE:
        notes.append(records[0].message)
        return False, records[0].indeterminacy_step, [], notes
    if hits:
        notes.append(f"{len(hits)} neighbors meet the indeterminacy set")
        return False, None, [], notes

    window = config.tail_window
    for stride in strides:
        per_record = [_residue_limits(r.coordinates, r.ks, stride, window, config.fs_tol) for r in records]
        if any(limits is None for limits in per_record):
            continue
        spread = max(fs_diameter([limits[c] for limits in per_record]) for c in range(stride))
        names = [point_name(p, config.fs_tol) for p in per_record[0]]
        if spread < allowed:
            if stride > 1:
                notes.append(f"orbits settle along residue classes mod {stride}")
            return True, None, names, notes
        notes.append(f"neighbor limits mod {stride} spread by {spread:.3g}")
        return False, None, names, notes
    if records[0].status == CONVERGED:
        notes.append("neighbors do not settle")
        return False, None, [records[0].limit], notes
    notes.append("orbit does not settle along any stride")
    return False, None, [], notes


def _local_config(config: MeroLabConfig) -> MeroLabConfig:
    """Smaller quadrature budget and a short Cauchy window for local families."""
    return replace(
        config,
        tail_window=3,
        mass_points=min(config.mass_points, 3),
        radial_panels=min(config.radial_panels, 4),
        nodes_per_panel=min(config.nodes_per_panel, 6),
        angular_nodes=min(config.angular_nodes, 8),
        slice_bases=1,
    )


def residue_family(
    f: HomogRep,
    chart: int,
    affine: Sequence[complex],
    radius: float,
    stride: int,
    residue: int,
    members: int,
) -> MapFamily:
    """
    The iterates ``f^k`` with ``k = residue (mod stride)``, centered at a point.

    Member ``j`` is ``f^(first + stride (j - 1))`` where ``first`` is the least
    positive index of the class.
    """
    first = residue if residue > 0 else stride
    name = f"{f.name or 'f'}^({first}+{stride}j)"
    fam = MapFamily(name, lambda j: iterate_closed(f, first + stride * (j - 1)),
                    k_min=1, k_max=members, source_chart=chart)
    local = fam.restricted(affine, radius)
    # chart ratios first; a constant limit has a unit content in coefficient form
    return replace(local, charts=tuple(range(f.nvars)) + (None,))


def _stride_level(verdicts: Sequence[Verdict]) -> Level:
    if any(v.level is Level.INCONCLUSIVE for v in verdicts):
        return Level.INCONCLUSIVE
    return min((v.level for v in verdicts), key=lambda level: level.rank)


def normal_membership(
    f: HomogRep,
    affine: Sequence[complex],
    chart: int = 0,
    radius: float = 0.05,
    members: int = 7,
    strides: Sequence[int] = (1, 2),
    config: Optional[MeroLabConfig] = None,
) -> Tuple[Level, Optional[int], List[Verdict]]:
    """
    Best convergence level of the local iterate families at a point.

    For each stride every residue class is classified on the polydisk of the
    given radius; the stride's level is the weakest class level. The first
    stride reaching Gamma or better wins.

    Returns:
        ``(level, stride, verdicts)``
    """
    config = _local_config(config or get_config())
    fallback: Tuple[Level, Optional[int], List[Verdict]] = (Level.INCONCLUSIVE, None, [])
    for stride in strides:
        verdicts = [
            classify(residue_family(f, chart, affine, radius, stride, r, members), config=config)
            for r in range(stride)
        ]
        level = _stride_level(verdicts)
        logger.debug(f"{f.name} at {list(affine)}: stride {stride} gives {level.value}")
        if level.rank is not None and level.rank >= Level.GAMMA.rank:
            return level, stride, verdicts
        if fallback[0] is Level.INCONCLUSIVE or level is Level.DIVERGENT:
            fallback = (level, stride, verdicts)
    return fallback


def fatou_inclusion_report(
    f: HomogRep,
    points: Sequence[Sequence[complex]],
    chart: int = 0,
    config: Optional[MeroLabConfig] = None,
    radius: float = 0.05,
    members: int = 7,
    strides: Sequence[int] = (1, 2),
) -> InclusionReport:
    """
    Place sample points in ``Phi``, ``Phi_s``, ``Phi_w`` and ``Phi_Gamma``.

    Args:
        f: Rational self-map of P^2
        points: Affine points of the chart
        chart: Source chart
        config: Tolerances and budgets
        radius: Radius of the local polydisk around each point
        members: Members per residue-class family
        strides: Strides probed for normality

    Returns:
        InclusionReport with the memberships and strict-inclusion witnesses
    """
    config = config or get_config()
    if not f.is_self_map or f.source_dim != 2:
        raise ValueError(f"inclusion reports need a self-map of P^2, got {f}")
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    strides = sorted({int(s) for s in strides})
    if not strides or strides[0] < 1:
        raise ValueError(f"strides must be positive, got {strides}")
    monomial = monomial_of(f)
    report = InclusionReport(f.name or str(f), chart, radius, members, strides)
    for affine in points:
        affine = [complex(z) for z in affine]
        m = Membership(affine, chart)
        m.fatou, m.preimage_step, m.orbit_limits, m.notes = fatou_membership(
            f, affine, chart, strides, config, monomial
        )
        m.level, m.stride, m.verdicts = normal_membership(f, affine, chart, radius, members, strides, config)
        if m.level is Level.INCONCLUSIVE:
            m.notes.append("local classification is inconclusive")
        else:
            sets = _LEVEL_SETS[m.level]
            m.strong, m.weak, m.gamma = ('strong' in sets), ('weak' in sets), ('gamma' in sets)
        logger.info(f"{report.map} at {affine}: Phi={m.fatou}, level {m.level.value}")
        report.memberships.append(m)
    for line in report.violations():
        logger.warning(f"{report.map}: {line}")
    return report


__all__ = [
    'Membership',
    'InclusionReport',
    'SETS',
    'fatou_inclusion_report',
    'fatou_membership',
    'normal_membership',
    'residue_family',
]
