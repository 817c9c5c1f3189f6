"""
Indeterminacy loci of reduced representations.

Exact mode stratifies the source by coordinate zero patterns. On the stratum
where exactly the variables in S vanish, a component keeps only the terms not
involving S. If every component dies the whole stratum is indeterminate; if a
surviving component is a single monomial the stratum is free of common zeros;
otherwise the survivors are binomials and the torus system is solved exactly
with sympy.

Sampled mode handles everything else on a grid and never guesses: cells that
refine to a common zero are reported as approximate points, cells that look
suspicious but do not refine are reported as inconclusive.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple
import logging

import numpy as np
import sympy
from scipy.optimize import minimize

from ..poly import GaussianRational, SparsePoly, to_sympy
from ..poly.gcd import to_fraction
from .base import HomogRep, ProjectiveMapError, ProjectivePoint, UnsupportedMapError, format_point
from .reduction import dehomogenize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoordinateSubspace:
    """
    Positive-dimensional part of an indeterminacy locus.

    Attributes:
        zero_coordinates: Variables vanishing on the component
        equations: Extra torus equations (as strings), empty for coordinate subspaces
        dimension: Dimension of the component
    """

    zero_coordinates: FrozenSet[int]
    equations: Tuple[str, ...] = ()
    dimension: int = 0

    def describe(self) -> str:
        parts = [f"z{i}=0" for i in sorted(self.zero_coordinates)] + list(self.equations)
        return "{" + ", ".join(parts) + "}"


@dataclass
class IndeterminacyReport:
    """Common zero locus of the components of a reduced representation."""

    method: str
    points: List[ProjectivePoint] = field(default_factory=list)
    components: List[CoordinateSubspace] = field(default_factory=list)
    algebraic_points: List[str] = field(default_factory=list)
    sampled_points: List[Tuple[complex, ...]] = field(default_factory=list)
    inconclusive_cells: List[Tuple[complex, ...]] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not (self.points or self.components or self.algebraic_points or self.sampled_points)

    @property
    def inconclusive(self) -> bool:
        return bool(self.inconclusive_cells)

    def to_dict(self) -> Dict:
        return {
            'method': self.method,
            'points': [format_point(p) for p in self.points],
            'components': [c.describe() for c in self.components],
            'algebraic_points': list(self.algebraic_points),
            'sampled_points': [[f"{z:.12g}" for z in p] for p in self.sampled_points],
            'inconclusive_cells': [[f"{z:.6g}" for z in p] for p in self.inconclusive_cells],
        }


def _restrict_to_stratum(poly: SparsePoly, zeros: FrozenSet[int]) -> SparsePoly:
    return SparsePoly(
        {e: c for e, c in poly.terms if not any(e[i] for i in zeros)},
        poly.nvars,
    )


def _exact_indeterminacy(r: HomogRep) -> IndeterminacyReport:
    report = IndeterminacyReport(method="exact-monomial")
    nvars = r.nvars
    components = [c for c in r.components if not c.is_zero]
    if any(len(c) > 2 for c in components):
        raise UnsupportedMapError(f"exact mode needs monomial or binomial components, got {r}")
    recorded: List[FrozenSet[int]] = []

    for size in range(nvars + 1):
        for zeros in map(frozenset, combinations(range(nvars), size)):
            if not r.local and size == nvars:
                continue
            if any(prev <= zeros for prev in recorded):
                continue
            survivors = [_restrict_to_stratum(c, zeros) for c in components]
            survivors = [s for s in survivors if not s.is_zero]
            free = [i for i in range(nvars) if i not in zeros]
            if not survivors:
                recorded.append(zeros)
                dim = len(free) - (0 if r.local else 1)
                if dim == 0:
                    point = [GaussianRational(0)] * nvars
                    point[free[0]] = GaussianRational(1)
                    report.points.append(tuple(point))
                else:
                    report.components.append(CoordinateSubspace(zeros, dimension=dim))
                continue
            if any(s.is_monomial for s in survivors):
                continue
            _solve_binomial_stratum(r, zeros, free, survivors, report)

    for point in report.points:
        values = r.tuple.evaluate_exact(point)
        if not all(v.is_zero for v in values):
            raise ProjectiveMapError(f"exact indeterminacy point {format_point(point)} does not zero {r}")
    logger.debug(f"Exact indeterminacy of {r}: {len(report.points)} points, {len(report.components)} components")
    return report


def _solve_binomial_stratum(r, zeros, free, survivors, report) -> None:
    """Solve the binomial torus system of one stratum with sympy."""
    nvars = r.nvars
    symbols = sympy.symbols(f"z0:{nvars}")
    values = {symbols[i]: 0 for i in zeros}
    unknowns = list(free)
    if not r.local:
        # dehomogenize on the first free coordinate
        values[symbols[free[0]]] = 1
        unknowns = free[1:]
    equations = [to_sympy(s).as_expr().subs(values) for s in survivors]
    unknown_symbols = [symbols[i] for i in unknowns]
    solutions = sympy.solve(equations, unknown_symbols, dict=True) if unknown_symbols else (
        [{}] if all(sympy.simplify(e) == 0 for e in equations) else []
    )
    for solution in solutions:
        coords = []
        for i in range(nvars):
            s = symbols[i]
            coords.append(values.get(s, solution.get(s, s)))
        if any(c == 0 for i, c in enumerate(coords) if i in free):
            continue
        remaining = [c for c in coords if getattr(c, "free_symbols", set())]
        if remaining:
            eqs = tuple(f"{symbols[i]}={sympy.sstr(coords[i])}" for i in unknowns if coords[i] != symbols[i])
            report.components.append(CoordinateSubspace(
                zeros, equations=eqs, dimension=len({sym for c in remaining for sym in c.free_symbols}),
            ))
            continue
        exact = []
        for c in coords:
            re_part, im_part = sympy.nsimplify(c).as_real_imag()
            if not (re_part.is_Rational and im_part.is_Rational):
                exact = None
                break
            exact.append(GaussianRational(to_fraction(re_part), to_fraction(im_part)))
        if exact is None:
            report.algebraic_points.append("[" + ":".join(sympy.sstr(c) for c in coords) + "]")
        else:
            report.points.append(tuple(exact))


def _sampled_indeterminacy(
    r: HomogRep,
    chart: Optional[int],
    grid: int,
    tol: float,
    bounds: Tuple[float, float],
) -> IndeterminacyReport:
    report = IndeterminacyReport(method="sampled")
    affine = r.tuple if r.local else dehomogenize(r, chart or 0)
    n = affine.nvars
    axis = np.linspace(bounds[0], bounds[1], grid)
    mesh = np.meshgrid(*([axis] * (2 * n)), indexing="ij") if n <= 2 else None
    if mesh is None:
        raise UnsupportedMapError("sampled indeterminacy is limited to charts of dimension at most 2")
    points = np.stack([m.ravel() for m in mesh], axis=-1)
    z = points[:, :n] + 1j * points[:, n:]
    values = affine.evaluate(z)
    weight = (1.0 + np.sum(np.abs(z) ** 2, axis=1)) ** (max(affine.max_degree(), 1) / 2.0)
    size = np.max(np.abs(values), axis=1) / weight
    step = (bounds[1] - bounds[0]) / max(grid - 1, 1)

    def objective(x: np.ndarray) -> float:
        w = x[:n] + 1j * x[n:]
        return float(np.max(np.abs(affine.evaluate(w[None, :])[0])) ** 2)

    candidates = np.flatnonzero(size < tol)
    for idx in candidates:
        result = minimize(objective, points[idx], method="Nelder-Mead",
                          options={"xatol": 1e-12, "fatol": 1e-24, "maxiter": 4000})
        found = result.x[:n] + 1j * result.x[n:]
        if result.fun < 1e-16 and np.all(np.abs(result.x - points[idx]) <= 2 * step):
            if not any(np.allclose(found, p, atol=1e-6) for p in report.sampled_points):
                report.sampled_points.append(tuple(complex(v) for v in found))
        else:
            report.inconclusive_cells.append(tuple(complex(v) for v in z[idx]))
    logger.info(f"Sampled indeterminacy: {len(report.sampled_points)} points, "
                f"{len(report.inconclusive_cells)} inconclusive cells out of {len(points)}")
    return report


def indeterminacy(
    r: HomogRep,
    mode: str = "exact",
    chart: Optional[int] = 0,
    grid: int = 21,
    tol: float = 1e-2,
    bounds: Tuple[float, float] = (-2.0, 2.0),
) -> IndeterminacyReport:
    """
    Common zero locus of a reduced representation.

    Args:
        r: Reduced representation
        mode: ``"exact"`` (monomial and binomial components) or ``"sampled"``
        chart: Source chart for sampled mode
        grid: Grid points per real axis in sampled mode
        tol: Threshold on the normalized max-component modulus in sampled mode
        bounds: Real and imaginary coordinate range in sampled mode

    Returns:
        An :class:`IndeterminacyReport`
    """
    if not r.reduced:
        raise ValueError("indeterminacy needs a reduced representation; call reduce_rep first")
    if mode == "exact":
        return _exact_indeterminacy(r)
    if mode == "sampled":
        return _sampled_indeterminacy(r, chart, grid, tol, bounds)
    raise ValueError(f"Unknown indeterminacy mode: {mode}")


__all__ = ['CoordinateSubspace', 'IndeterminacyReport', 'indeterminacy']
