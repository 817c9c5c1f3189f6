"""
Dynamics of rational self-maps of P^2.

- orbits: exact and batched log orbits of monomial maps, renormalized numeric orbits
- scan: Fatou/Julia labels of a chart grid
- gamma_volumes: graph volumes of iterates near an indeterminacy point
- inclusion: membership in the Fubini-Study, strong, weak and Gamma Fatou sets
"""

from .orbits import (
    CONVERGED,
    INDETERMINATE,
    JULIA,
    POINT_NAMES,
    UNDECIDED,
    Dominance,
    LogOrbitPlan,
    OrbitIndeterminacyError,
    OrbitRecord,
    fs_diameter,
    log_orbit,
    log_orbit_batch,
    normalize_point,
    numeric_orbit,
    point_name,
)
from .scan import (
    EXPANSION,
    FATOU_LABELS,
    LABEL_FATOU,
    LABEL_INDETERMINATE,
    LABEL_JULIA,
    ChartGrid,
    FatouScanGrid,
    classify_point,
    fatou_scan,
    label_records,
    monomial_of,
    plan_of,
)
from .gamma_volumes import GammaVolumeSeries, gamma_volume_series, general_volumes, second_bound
from .inclusion import (
    SETS,
    InclusionReport,
    Membership,
    fatou_inclusion_report,
    fatou_membership,
    normal_membership,
    residue_family,
)

__all__ = [
    'CONVERGED',
    'JULIA',
    'INDETERMINATE',
    'UNDECIDED',
    'POINT_NAMES',
    'Dominance',
    'OrbitIndeterminacyError',
    'OrbitRecord',
    'LogOrbitPlan',
    'log_orbit',
    'log_orbit_batch',
    'numeric_orbit',
    'normalize_point',
    'fs_diameter',
    'point_name',
    'ChartGrid',
    'FatouScanGrid',
    'FATOU_LABELS',
    'LABEL_JULIA',
    'LABEL_INDETERMINATE',
    'LABEL_FATOU',
    'EXPANSION',
    'fatou_scan',
    'classify_point',
    'label_records',
    'monomial_of',
    'plan_of',
    'GammaVolumeSeries',
    'gamma_volume_series',
    'general_volumes',
    'second_bound',
    'SETS',
    'Membership',
    'InclusionReport',
    'fatou_inclusion_report',
    'fatou_membership',
    'normal_membership',
    'residue_family',
]
