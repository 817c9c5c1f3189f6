"""
Numerical geometry of lifts and potentials.

- base: domains, reports and errors
- lift: lift evaluators and plurisubharmonic potentials
- rules: Gauss-Legendre and trapezoid product rules
- contour: argument-principle zero counting and zero location
- area: Fubini-Study areas of disks
- montecarlo: seeded mixture Monte Carlo
- mass: mixed non-pluripolar Monge-Ampere masses and graph volumes
- king: boundary/interior residue check and local degrees
- rashkovskii: the Rashkovskii family of potentials
"""

from .base import (
    AreaReport,
    BallSpec,
    ContourSpec,
    ContourVanishingError,
    DensitySignError,
    MassReport,
    PolydiskSpec,
    QuadratureError,
    ResidualTooLargeError,
    SampleBudgetError,
    ZeroCountDisagreementError,
    ZeroLocus,
    elementary_symmetric,
    map_chunks,
    mass_constant,
)
from .lift import (
    LiftEvaluator,
    LogNormPotential,
    Potential,
    RashkovskiiPotential,
    SquaredNormPotential,
    SumPotential,
    as_lift,
    as_potential,
)
from .contour import WindingReport, common_zero_count, locate_zeros, winding_report, zero_count_contour
from .area import fs_area_boundary, fs_area_interior
from .montecarlo import LogRadialLaw, MonteCarloResult, integrate
from .mass import euclidean_mass, graph_volume, mixed_ma_mass, mixed_ma_masses, richardson, zero_locus_of
from .king import KingReport, king_residue_check, local_degree
from .rashkovskii import (
    default_ball,
    rashkovskii_eps,
    rashkovskii_graph_volume,
    rashkovskii_law,
    rashkovskii_lift,
    rashkovskii_mass,
    rashkovskii_series,
)

__all__ = [
    'QuadratureError',
    'ContourVanishingError',
    'ResidualTooLargeError',
    'ZeroCountDisagreementError',
    'DensitySignError',
    'SampleBudgetError',
    'ContourSpec',
    'PolydiskSpec',
    'BallSpec',
    'ZeroLocus',
    'AreaReport',
    'MassReport',
    'map_chunks',
    'elementary_symmetric',
    'mass_constant',
    'LiftEvaluator',
    'Potential',
    'LogNormPotential',
    'SquaredNormPotential',
    'SumPotential',
    'RashkovskiiPotential',
    'as_lift',
    'as_potential',
    'WindingReport',
    'winding_report',
    'zero_count_contour',
    'locate_zeros',
    'common_zero_count',
    'fs_area_interior',
    'fs_area_boundary',
    'LogRadialLaw',
    'MonteCarloResult',
    'integrate',
    'zero_locus_of',
    'richardson',
    'mixed_ma_masses',
    'mixed_ma_mass',
    'euclidean_mass',
    'graph_volume',
    'KingReport',
    'king_residue_check',
    'local_degree',
    'default_ball',
    'rashkovskii_eps',
    'rashkovskii_law',
    'rashkovskii_lift',
    'rashkovskii_mass',
    'rashkovskii_graph_volume',
    'rashkovskii_series',
]
