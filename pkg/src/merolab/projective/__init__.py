"""
Projective map representations.

- base: HomogRep, chart maps and errors
- reduction: reduce, compose, iterate, chart restriction, local lifts
- monomial: exact exponent-matrix arithmetic for monomial maps
- indeterminacy: exact and sampled indeterminacy loci
- serialize: text and dict forms of representations
"""

from .base import (
    AffineRationalMap,
    DimensionMismatchError,
    HomogRep,
    MapFormatError,
    ProjectiveMapError,
    ProjectivePoint,
    SingularExponentMatrixError,
    UnsupportedMapError,
    format_point,
)
from .reduction import (
    algebraic_degree,
    compose_raw,
    compose_reduce,
    dehomogenize,
    iterate_closed,
    local_lift,
    reduce_rep,
    restrict_chart,
)
from .monomial import (
    ContractedCurve,
    MonomialMap,
    contracted_curves,
    hits_indeterminacy,
    topological_degree,
    zero_pattern_step,
)
from .indeterminacy import CoordinateSubspace, IndeterminacyReport, indeterminacy
from .serialize import dumps_map, load_map, loads_map, rep_to_dict

__all__ = [
    'HomogRep',
    'AffineRationalMap',
    'ProjectivePoint',
    'ProjectiveMapError',
    'DimensionMismatchError',
    'SingularExponentMatrixError',
    'UnsupportedMapError',
    'MapFormatError',
    'format_point',
    'reduce_rep',
    'compose_raw',
    'compose_reduce',
    'iterate_closed',
    'algebraic_degree',
    'dehomogenize',
    'restrict_chart',
    'local_lift',
    'MonomialMap',
    'ContractedCurve',
    'topological_degree',
    'contracted_curves',
    'zero_pattern_step',
    'hits_indeterminacy',
    'CoordinateSubspace',
    'IndeterminacyReport',
    'indeterminacy',
    'dumps_map',
    'loads_map',
    'load_map',
    'rep_to_dict',
]
