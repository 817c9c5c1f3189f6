"""
Convergence of families of meromorphic maps into projective space.

- family: parametrized families ``k -> f_k``
- limits: convergence of reduced representations and limit candidates
- divisors: pullback divisor counts on slices
- masses: mixed Monge-Ampere mass trends
- classifier: Strong / Weak / Gamma / Divergent verdicts
- separation: uniform separation of pullback hypersurfaces
- bubbles: image clouds of shrinking spheres
"""

from .family import Domain, MapFamily, exact_point
from .verdict import Evidence, Level, Verdict
from .limits import LimitContent, RepLimit, fs_distance, reducedness_of_limit, rep_limit
from .divisors import (
    DivisorCountReport,
    Hyperplane,
    Slice,
    SliceCount,
    counts_bounded,
    divisor_count_bound,
    hyperplane_panel,
    slice_panel,
)
from .masses import MassConvergence, MassSeries, mass_convergence, mass_trend
from .classifier import classify
from .separation import SeparationReport, hausdorff, uniform_separation
from .bubbles import BubbleReport, Cluster, bubble_probe

__all__ = [
    'Domain',
    'MapFamily',
    'exact_point',
    'Level',
    'Evidence',
    'Verdict',
    'RepLimit',
    'LimitContent',
    'rep_limit',
    'reducedness_of_limit',
    'fs_distance',
    'Hyperplane',
    'Slice',
    'SliceCount',
    'DivisorCountReport',
    'hyperplane_panel',
    'slice_panel',
    'counts_bounded',
    'divisor_count_bound',
    'MassSeries',
    'MassConvergence',
    'mass_convergence',
    'mass_trend',
    'classify',
    'SeparationReport',
    'uniform_separation',
    'hausdorff',
    'BubbleReport',
    'Cluster',
    'bubble_probe',
]
