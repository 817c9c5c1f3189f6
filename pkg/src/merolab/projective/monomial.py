"""
Monomial maps.

Every component of a monomial map is a single term ``c_i z^{A[i]}``. Iterates
compose through the homogeneous exponent matrix ``A``: the k-th iterate has
exponent matrix ``A^k`` and coefficient exponents ``I + A + ... + A^{k-1}``.
Both are computed by exact integer powering, so exponents such as 2^40 never
pass through floating point.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple
import logging

import numpy as np
import sympy

from ..poly import GaussianRational, PolyTuple, SparsePoly
from .base import (
    DimensionMismatchError,
    HomogRep,
    ProjectivePoint,
    SingularExponentMatrixError,
    UnsupportedMapError,
)
from .reduction import restrict_chart

logger = logging.getLogger(__name__)

# coefficient exponents beyond this make exact non-unit coefficients explode
_COEFFICIENT_EXPONENT_WARN = 10_000


def _int_matrix(rows: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array([[int(x) for x in row] for row in rows], dtype=object)


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.dot(a, b)


@dataclass(frozen=True)
class ContractedCurve:
    """A coordinate hyperplane ``{z_line = 0}`` mapped onto a single point."""

    line: int
    image: ProjectivePoint


@dataclass(frozen=True)
class MonomialMap:
    """
    A projective self-map whose components are single monomials.

    Attributes:
        base: The reduced homogeneous representation
        chart: Chart used for the affine exponent matrix
        matrix: Affine (Laurent) exponent matrix in that chart
        coefficients: Affine coefficient ratios in that chart
    """

    base: HomogRep
    chart: int
    matrix: Tuple[Tuple[int, ...], ...]
    coefficients: Tuple[GaussianRational, ...]

    @classmethod
    def from_rep(cls, rep: HomogRep, chart: int = 0) -> "MonomialMap":
        """Build from a representation with single-monomial, nonzero components."""
        if rep.local:
            raise UnsupportedMapError("monomial maps are projective self-maps")
        if not rep.is_self_map:
            raise DimensionMismatchError(f"{rep} is not a self-map")
        if not all(c.is_monomial for c in rep.components):
            raise UnsupportedMapError(f"{rep} has a component that is not a single nonzero monomial")
        from .reduction import reduce_rep

        base = reduce_rep(rep)
        affine = restrict_chart(base, chart)
        return cls(
            base=base,
            chart=chart,
            matrix=tuple(tuple(row) for row in affine.exponent_matrix()),
            coefficients=tuple(affine.coefficients()),
        )

    @property
    def dimension(self) -> int:
        return self.base.source_dim

    def homogeneous_matrix(self) -> np.ndarray:
        """Rows are the exponent vectors of the components."""
        return _int_matrix([c.leading_term[0] for c in self.base.components])

    def homogeneous_coefficients(self) -> List[GaussianRational]:
        return [c.leading_coefficient for c in self.base.components]

    def affine_matrix(self) -> np.ndarray:
        return _int_matrix(self.matrix)

    def affine_power(self, k: int) -> np.ndarray:
        """Exact ``M^k`` of the affine exponent matrix."""
        result = np.identity(self.dimension, dtype=object)
        base = self.affine_matrix()
        while k:
            if k & 1:
                result = _matmul(result, base)
            k >>= 1
            if k:
                base = _matmul(base, base)
        return result

    def homogeneous_power(self, k: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Exponent data of the raw k-th iterate.

        Returns:
            ``(A_k, B_k)`` with component i of the raw iterate equal to
            ``prod_l c_l^{B_k[i,l]} * z^{A_k[i]}``
        """
        if k < 1:
            raise ValueError(f"iteration count must be at least 1, got {k}")
        size = self.base.nvars
        a = self.homogeneous_matrix()
        identity = np.identity(size, dtype=object)
        # (A_a, B_a) o (A_b, B_b) = (A_a A_b, B_a + A_a B_b)
        result: Optional[Tuple[np.ndarray, np.ndarray]] = None
        power = (a, identity)
        while k:
            if k & 1:
                if result is None:
                    result = power
                else:
                    result = (_matmul(result[0], power[0]), result[1] + _matmul(result[0], power[1]))
            k >>= 1
            if k:
                power = (_matmul(power[0], power[0]), power[1] + _matmul(power[0], power[1]))
        return result

    def iterate(self, k: int) -> HomogRep:
        """Reduced k-th iterate, scalar-normalized."""
        exps, coeff_exps = self.homogeneous_power(k)
        coeffs = self.homogeneous_coefficients()
        units = all(c.norm2() == 1 for c in coeffs)
        if not units and max(abs(int(x)) for x in coeff_exps.flat) > _COEFFICIENT_EXPONENT_WARN:
            logger.warning(f"Iterate {k} of {self.base}: exact coefficients grow to exponent "
                           f"{max(abs(int(x)) for x in coeff_exps.flat)}")
        content = [min(int(exps[i, l]) for i in range(exps.shape[0])) for l in range(exps.shape[1])]
        components = []
        for i in range(exps.shape[0]):
            coeff = GaussianRational(1)
            for l, c in enumerate(coeffs):
                e = int(coeff_exps[i, l])
                if e and c != 1:
                    coeff = coeff * c ** e
            row = tuple(int(exps[i, l]) - content[l] for l in range(exps.shape[1]))
            components.append(SparsePoly.monomial(row, coeff))
        name = f"{self.base.name}^{k}" if self.base.name else None
        return HomogRep(PolyTuple(components).normalized(), reduced=True, name=name)

    def topological_degree(self) -> int:
        return topological_degree(self)

    def __str__(self) -> str:
        return f"MonomialMap({self.base}, chart={self.chart}, matrix={[list(r) for r in self.matrix]})"


def topological_degree(m: MonomialMap) -> int:
    """
    Generic fiber count of a monomial map: ``|det|`` of its affine exponent matrix.

    Raises:
        SingularExponentMatrixError: If the determinant is zero
    """
    det = sympy.Matrix([list(row) for row in m.matrix]).det()
    if det == 0:
        raise SingularExponentMatrixError(f"exponent matrix {[list(r) for r in m.matrix]} is singular")
    return abs(int(det))


def contracted_curves(m: MonomialMap) -> List[ContractedCurve]:
    """
    Coordinate hyperplanes whose generic point maps to a single point.

    On ``{z_j = 0}`` a component survives iff its exponent of ``z_j`` is zero.
    The hyperplane is contracted when the surviving monomials agree after
    dropping ``z_j`` (so their ratios are constant); the image has the
    surviving coefficients in those slots and zeros elsewhere.
    """
    if m.dimension < 2:
        return []
    a = m.homogeneous_matrix()
    coeffs = m.homogeneous_coefficients()
    curves = []
    for j in range(a.shape[1]):
        survivors = [i for i in range(a.shape[0]) if a[i, j] == 0]
        if not survivors:
            continue
        restricted = {tuple(int(a[i, l]) for l in range(a.shape[1]) if l != j) for i in survivors}
        if len(restricted) != 1:
            continue
        image = [GaussianRational(0)] * a.shape[0]
        for i in survivors:
            image[i] = coeffs[i]
        lead = next(c for c in image if not c.is_zero)
        curves.append(ContractedCurve(line=j, image=tuple(c / lead for c in image)))
    return curves


def zero_pattern_step(m: MonomialMap, zeros: FrozenSet[int]) -> FrozenSet[int]:
    """Coordinates of ``f(z)`` that vanish when exactly ``zeros`` vanish at ``z``."""
    a = m.homogeneous_matrix()
    return frozenset(i for i in range(a.shape[0]) if any(a[i, j] > 0 for j in zeros))


def hits_indeterminacy(m: MonomialMap, zeros: FrozenSet[int], max_steps: Optional[int] = None) -> Optional[int]:
    """
    First iterate at which a point with zero pattern ``zeros`` lands in I_f.

    The zero pattern evolves deterministically, so the sequence of patterns is
    eventually periodic and the answer is exact.

    Args:
        m: Monomial map
        zeros: Indices of vanishing homogeneous coordinates of the point
        max_steps: Optional cap on the number of steps examined

    Returns:
        ``n`` such that ``f^n(z)`` is an indeterminacy point (0 means ``z``
        itself is), or ``None`` if the orbit never meets I_f
    """
    full = frozenset(range(m.base.nvars))
    pattern = frozenset(zeros)
    if pattern == full:
        raise ValueError("the all-zero pattern is not a projective point")
    seen: Dict[FrozenSet[int], int] = {}
    step = 0
    while pattern not in seen:
        if max_steps is not None and step > max_steps:
            return None
        seen[pattern] = step
        image = zero_pattern_step(m, pattern)
        if image == full:
            return step
        pattern = image
        step += 1
    return None


__all__ = [
    'MonomialMap',
    'ContractedCurve',
    'topological_degree',
    'contracted_curves',
    'zero_pattern_step',
    'hits_indeterminacy',
]
