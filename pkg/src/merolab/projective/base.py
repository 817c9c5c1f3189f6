"""
Projective map representations.

A :class:`HomogRep` wraps a :class:`PolyTuple` ``(f^0, ..., f^N)``. In the
default projective mode the tuple is homogeneous in ``n+1`` variables and
describes a rational map P^n --> P^N. With ``local=True`` the variables are
affine coordinates on an open subset of C^n and the tuple is a local
homogeneous representation; homogeneity is then not required.
"""

from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..poly import GaussianRational, PolyTuple, SparsePoly, tuple_content

logger = logging.getLogger(__name__)


class ProjectiveMapError(Exception):
    """Raised when a map representation is invalid."""
    pass


class DimensionMismatchError(ProjectiveMapError):
    """Raised when source and target dimensions do not fit together."""
    pass


class SingularExponentMatrixError(ProjectiveMapError):
    """Raised when a monomial map has a singular affine exponent matrix."""
    pass


class UnsupportedMapError(ProjectiveMapError):
    """Raised when an exact fast path does not apply to the given map."""
    pass


class MapFormatError(ProjectiveMapError):
    """Raised when a serialized map cannot be parsed."""
    pass


ProjectivePoint = Tuple[GaussianRational, ...]


@dataclass(frozen=True)
class HomogRep:
    """
    A homogeneous representation ``[f^0 : ... : f^N]``.

    Attributes:
        tuple: The components
        reduced: Set when the components have constant GCD
        local: The source is an open set of C^n rather than P^n
        name: Optional label used in reports
    """

    tuple: PolyTuple
    reduced: bool = False
    local: bool = False
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.local and not self.tuple.homogeneous:
            raise ProjectiveMapError(f"components of {self.tuple} are not homogeneous of one degree")
        if self.reduced and not tuple_content(self.tuple).is_constant:
            raise ProjectiveMapError(f"{self.tuple} is flagged reduced but has a common factor")

    @classmethod
    def from_components(
        cls,
        components: Sequence[SparsePoly],
        local: bool = False,
        reduced: bool = False,
        name: Optional[str] = None,
    ) -> "HomogRep":
        return cls(PolyTuple(components), reduced=reduced, local=local, name=name)

    @classmethod
    def identity(cls, n: int) -> "HomogRep":
        """Identity of P^n."""
        return cls(PolyTuple(SparsePoly.variables(n + 1)), reduced=True, name="identity")

    @property
    def components(self) -> Tuple[SparsePoly, ...]:
        return self.tuple.components

    @property
    def nvars(self) -> int:
        return self.tuple.nvars

    @property
    def source_dim(self) -> int:
        return self.nvars if self.local else self.nvars - 1

    @property
    def target_dim(self) -> int:
        return len(self.tuple) - 1

    @property
    def degree(self) -> Optional[int]:
        """Common homogeneous degree of the components (projective reps only)."""
        return self.tuple.degree

    @property
    def is_self_map(self) -> bool:
        return not self.local and self.source_dim == self.target_dim

    @property
    def is_monomial(self) -> bool:
        return self.tuple.is_monomial

    def with_tuple(self, t: PolyTuple, reduced: bool = False) -> "HomogRep":
        return replace(self, tuple=t, reduced=reduced)

    def normalized(self) -> "HomogRep":
        return replace(self, tuple=self.tuple.normalized())

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Homogeneous image coordinates, scaled to unit Euclidean norm per point."""
        from ..poly import evaluate_scaled

        values, _, _ = evaluate_scaled(self.tuple, points)
        norms = np.linalg.norm(values, axis=1, keepdims=True)
        return np.divide(values, norms, out=np.zeros_like(values), where=norms > 0)

    def __str__(self) -> str:
        return "[" + " : ".join(str(c) for c in self.components) + "]"


@dataclass(frozen=True)
class AffineRationalMap:
    """
    A map in affine charts, each coordinate a ratio ``numerator / denominator``.

    Attributes:
        numerators: Numerator per target affine coordinate
        denominators: Denominator per target affine coordinate
        source_chart: Source variable set to 1 (``None`` for local reps)
        target_chart: Target component used as denominator
    """

    numerators: Tuple[SparsePoly, ...]
    denominators: Tuple[SparsePoly, ...]
    source_chart: Optional[int]
    target_chart: int

    @property
    def nvars(self) -> int:
        return self.numerators[0].nvars

    @property
    def is_monomial(self) -> bool:
        return all(
            (n.is_zero or n.is_monomial) and d.is_monomial
            for n, d in zip(self.numerators, self.denominators)
        )

    def exponent_matrix(self) -> List[List[int]]:
        """Laurent exponents of a monomial chart map, one row per coordinate."""
        if not self.is_monomial:
            raise UnsupportedMapError("chart map is not monomial")
        rows = []
        for n, d in zip(self.numerators, self.denominators):
            if n.is_zero:
                raise UnsupportedMapError("a chart coordinate is identically zero")
            rows.append([a - b for a, b in zip(n.leading_term[0], d.leading_term[0])])
        return rows

    def coefficients(self) -> List[GaussianRational]:
        return [
            (n.leading_coefficient / d.leading_coefficient) if not n.is_zero else GaussianRational(0)
            for n, d in zip(self.numerators, self.denominators)
        ]

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        cols = []
        for n, d in zip(self.numerators, self.denominators):
            den = d.evaluate(pts)
            with np.errstate(divide="ignore", invalid="ignore"):
                cols.append(n.evaluate(pts) / den)
        return np.stack(cols, axis=-1)

    def __str__(self) -> str:
        parts = []
        for n, d in zip(self.numerators, self.denominators):
            if d.is_constant and d == 1:
                parts.append(str(n))
            else:
                parts.append(f"({n})/({d})")
        return "(" + ", ".join(parts) + ")"


def format_point(point: Sequence[GaussianRational]) -> str:
    return "[" + ":".join(str(c) for c in point) + "]"


__all__ = [
    'ProjectiveMapError',
    'DimensionMismatchError',
    'SingularExponentMatrixError',
    'UnsupportedMapError',
    'MapFormatError',
    'HomogRep',
    'AffineRationalMap',
    'ProjectivePoint',
    'format_point',
]
