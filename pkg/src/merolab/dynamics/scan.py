"""Fatou/Julia labeling of a grid in an affine chart of P^2."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np
import pandas as pd

from ..config import MeroLabConfig, get_config
from ..projective import HomogRep, MonomialMap
from ..quadrature import map_chunks
from .orbits import (
    CONVERGED,
    INDETERMINATE,
    JULIA,
    LogOrbitPlan,
    OrbitRecord,
    fs_diameter,
    log_orbit_batch,
    numeric_orbit,
)

logger = logging.getLogger(__name__)

FATOU_LABELS = {'r': 'Phi1_to_r', 'q': 'Phi2_to_q', 'p': 'DeltaStar_to_p'}
LABEL_JULIA = 'Julia'
LABEL_INDETERMINATE = 'Indeterminate'
LABEL_FATOU = 'Fatou'

# neighbor limits may spread this much more than their starting points
EXPANSION = 10.0


@dataclass(frozen=True)
class ChartGrid:
    """
    A grid of moduli ``(|u1|, |u2|)`` in the affine chart ``U_chart``.

    Attributes:
        chart: Homogeneous coordinate set to 1
        u1: Modulus range of the first affine coordinate
        u2: Modulus range of the second affine coordinate
        resolution: Cells per non-degenerate range
        phases: Arguments of ``u1`` and ``u2``
    """

    chart: int = 0
    u1: Tuple[float, float] = (0.2, 2.0)
    u2: Tuple[float, float] = (0.0, 2.0)
    resolution: int = 50
    phases: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not 0 <= self.chart <= 2:
            raise ValueError(f"chart must be 0, 1 or 2, got {self.chart}")
        if self.resolution < 1:
            raise ValueError(f"resolution must be positive, got {self.resolution}")
        for lo, hi in (self.u1, self.u2):
            if lo < 0 or hi < lo:
                raise ValueError(f"modulus range ({lo}, {hi}) must satisfy 0 <= lo <= hi")

    def axis(self, which: int) -> np.ndarray:
        lo, hi = (self.u1, self.u2)[which]
        count = 1 if lo == hi else self.resolution
        return np.linspace(lo, hi, count)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.axis(1)), len(self.axis(0))

    def affine(self, row: int, col: int) -> np.ndarray:
        """Cell center ``(u1, u2)``."""
        return np.array([
            self.axis(0)[col] * np.exp(1j * self.phases[0]),
            self.axis(1)[row] * np.exp(1j * self.phases[1]),
        ])

    def homogeneous(self, affine: Sequence[complex]) -> List[complex]:
        values = [complex(v) for v in affine]
        return values[:self.chart] + [1.0 + 0j] + values[self.chart:]

    def to_dict(self) -> Dict:
        return {
            'chart': self.chart,
            'u1': list(self.u1),
            'u2': list(self.u2),
            'resolution': self.resolution,
            'phases': list(self.phases),
        }


@dataclass
class FatouScanGrid:
    """
    Labels of a chart grid.

    Attributes:
        grid: The scanned grid
        method: ``log-orbit`` for monomial maps, ``numeric-orbit`` otherwise
        labels: One label per cell, rows along ``|u2|``
        margins: Dominance margin of each cell center (log orbits only)
    """

    grid: ChartGrid
    method: str
    labels: List[List[str]] = field(default_factory=list)
    margins: List[List[Optional[float]]] = field(default_factory=list)

    def counts(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for row in self.labels:
            for label in row:
                out[label] = out.get(label, 0) + 1
        return dict(sorted(out.items()))

    def label_at(self, row: int, col: int) -> str:
        return self.labels[row][col]

    def to_frame(self) -> pd.DataFrame:
        """One row per cell: center, label and margin."""
        records = []
        for i, row in enumerate(self.labels):
            for j, label in enumerate(row):
                u = self.grid.affine(i, j)
                records.append({
                    'row': i,
                    'col': j,
                    'u1_re': float(u[0].real),
                    'u1_im': float(u[0].imag),
                    'u2_re': float(u[1].real),
                    'u2_im': float(u[1].imag),
                    'label': label,
                    'margin': self.margins[i][j],
                })
        return pd.DataFrame.from_records(
            records, columns=['row', 'col', 'u1_re', 'u1_im', 'u2_re', 'u2_im', 'label', 'margin']
        )

    def write_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False, float_format="%.12g")
        logger.info(f"Wrote {path}")
        return path

    def to_dict(self) -> Dict:
        return {
            'grid': self.grid.to_dict(),
            'method': self.method,
            'shape': list(self.grid.shape),
            'counts': self.counts(),
            'labels': [list(r) for r in self.labels],
            'margins': [list(r) for r in self.margins],
        }


def monomial_of(f: HomogRep) -> Optional[MonomialMap]:
    """The monomial form of ``f`` when every component is a single monomial."""
    if f.is_self_map and f.is_monomial and all(not c.is_zero for c in f.components):
        return MonomialMap.from_rep(f)
    return None


def perturbed_samples(affine: Sequence[complex], perturbation: float) -> List[np.ndarray]:
    """The point and its four neighbors ``u_j (1 +- perturbation)``."""
    center = np.asarray(affine, dtype=complex)
    out = [center]
    for j in range(len(center)):
        for sign in (1.0, -1.0):
            moved = center.copy()
            moved[j] = center[j] * (1.0 + sign * perturbation)
            out.append(moved)
    return out


def label_records(records: Sequence[OrbitRecord], fs_tol: float) -> str:
    """
    Fatou label shared by a point and its neighbors, Julia or Indeterminate.

    The neighbors are Fatou together when every orbit converges and the limits
    are no further apart than ``fs_tol`` or than ``EXPANSION`` times the
    starting points. Orbits of the identity keep their spread and stay Fatou;
    neighbors split between two attracting points do not.
    """
    if any(r.status == INDETERMINATE for r in records):
        return LABEL_INDETERMINATE
    if not all(r.status == CONVERGED for r in records):
        return LABEL_JULIA
    spread = fs_diameter([r.limit_point for r in records])
    if spread >= fs_tol and spread > EXPANSION * fs_diameter([r.point for r in records]):
        return LABEL_JULIA
    return FATOU_LABELS.get(records[0].limit, LABEL_FATOU)


def _label(records: Sequence[OrbitRecord], config: MeroLabConfig) -> Tuple[str, Optional[float]]:
    label = label_records(records, config.fs_tol)
    center = records[0]
    margin = None
    if center.dominance is not None:
        margin = 0.0 if center.status == JULIA else center.dominance.margin
        margin = margin if math.isfinite(margin) else None
    return label, margin


def plan_of(f: HomogRep, config: Optional[MeroLabConfig] = None) -> Optional[LogOrbitPlan]:
    """Log-orbit plan of a monomial self-map at ``config.orbit_kmax``, else ``None``."""
    config = config or get_config()
    monomial = monomial_of(f)
    return LogOrbitPlan.build(monomial, config.orbit_kmax) if monomial is not None else None


def classify_point(
    f: HomogRep,
    affine: Sequence[complex],
    chart: int = 0,
    config: Optional[MeroLabConfig] = None,
    plan: Optional[LogOrbitPlan] = None,
) -> Tuple[str, Optional[float], List[OrbitRecord]]:
    """
    Label one point of a chart by the equicontinuity proxy.

    Returns:
        ``(label, margin, records)`` where ``records[0]`` is the point's own orbit
    """
    config = config or get_config()
    if plan is None:
        plan = plan_of(f, config)
    grid = ChartGrid(chart=chart)
    points = [grid.homogeneous(sample) for sample in perturbed_samples(affine, config.perturbation)]
    if plan is not None:
        records = log_orbit_batch(plan, points, config)
    else:
        records = [numeric_orbit(f, point, config=config) for point in points]
    label, margin = _label(records, config)
    return label, margin, records


def _scan_row(
    f: HomogRep, plan: Optional[LogOrbitPlan], grid: ChartGrid, row: int, config: MeroLabConfig
) -> Tuple[List[str], List[Optional[float]]]:
    """Labels and margins of one grid row; log orbits run on the whole row at once."""
    cols = grid.shape[1]
    if plan is None:
        cells = [classify_point(f, grid.affine(row, j), grid.chart, config)[:2] for j in range(cols)]
    else:
        samples = [
            grid.homogeneous(s)
            for j in range(cols)
            for s in perturbed_samples(grid.affine(row, j), config.perturbation)
        ]
        records = log_orbit_batch(plan, samples, config)
        width = len(records) // cols
        cells = [_label(records[j * width:(j + 1) * width], config) for j in range(cols)]
    return [label for label, _ in cells], [margin for _, margin in cells]


def fatou_scan(f: HomogRep, grid: Optional[ChartGrid] = None, config: Optional[MeroLabConfig] = None) -> FatouScanGrid:
    """
    Label every cell of a chart grid as a Fatou component, Julia or Indeterminate.

    Monomial maps use batched log orbits over a grid row, with the exponent
    data of the iterates computed once per scan; other maps use renormalized
    numeric orbits. A cell is Fatou when its center and four perturbed
    neighbors converge without spreading apart (see :func:`label_records`).

    Args:
        f: Rational self-map of P^2
        grid: Chart grid (default: ``|u1|`` in [0.2, 2], ``|u2|`` in [0, 2] at ``config.grid``)
        config: Tolerances, workers and progress output

    Returns:
        FatouScanGrid
    """
    config = config or get_config()
    if not f.is_self_map or f.source_dim != 2:
        raise ValueError(f"fatou scans need a self-map of P^2, got {f}")
    grid = grid or ChartGrid(resolution=config.grid)
    plan = plan_of(f, config)
    rows, cols = grid.shape
    scan = FatouScanGrid(grid, "log-orbit" if plan is not None else "numeric-orbit")
    logger.info(f"Scanning {f} on a {rows}x{cols} grid in chart U_{grid.chart} ({scan.method})")

    def run_row(i: int) -> Tuple[List[str], List[Optional[float]]]:
        return _scan_row(f, plan, grid, i, config)

    for labels, margins in map_chunks(run_row, range(rows), config.workers, progress=config.progress, desc="scan rows"):
        scan.labels.append(labels)
        scan.margins.append(margins)
    logger.info(f"Scan finished: {scan.counts()}")
    return scan


__all__ = [
    'ChartGrid',
    'FatouScanGrid',
    'FATOU_LABELS',
    'LABEL_JULIA',
    'LABEL_INDETERMINATE',
    'LABEL_FATOU',
    'fatou_scan',
    'classify_point',
    'label_records',
    'perturbed_samples',
    'monomial_of',
    'plan_of',
    'EXPANSION',
]
