"""
King-type residue check at an isolated common zero in C^2.

The point mass of ``(dd^c log ||F||^2)^2`` at the center of a ball equals the
boundary integral of ``d^c u ^ dd^c u`` over the sphere minus the
non-pluripolar mass inside. The sphere is parametrized by
``z = c + r (cos t e^{ia}, sin t e^{ib})``; this parametrization is negatively
oriented with respect to the outward normal.
"""

from dataclasses import asdict, dataclass
from itertools import permutations
from typing import Any, Dict, Optional, Union
import logging
import math

import numpy as np

from ..poly import PolyTuple
from ..projective import HomogRep
from .base import BallSpec, QuadratureError
from .lift import LogNormPotential, as_lift
from .mass import mixed_ma_mass
from .rules import sphere_rule_c2

logger = logging.getLogger(__name__)


@dataclass
class KingReport:
    """Boundary mass, interior mass and the inferred atom at the center."""

    boundary: float
    interior: float
    atom: float
    residual: float
    radius: float
    boundary_error: float
    interior_error: float

    @property
    def error(self) -> float:
        return self.boundary_error + self.interior_error

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _sphere_frame(center: np.ndarray, radius: float, t, a, b):
    """Points and the rows ``(d/dt, d/da, d/db)`` of each coordinate."""
    e_a, e_b = np.exp(1j * a), np.exp(1j * b)
    ct, st = np.cos(t), np.sin(t)
    points = center + radius * np.stack([ct * e_a, st * e_b], axis=-1)
    zeros = np.zeros_like(e_a)
    frame = radius * np.stack([
        np.stack([-st * e_a, 1j * ct * e_a, zeros], axis=-1),
        np.stack([ct * e_b, zeros, 1j * st * e_b], axis=-1),
    ], axis=1)
    return points, frame


def _boundary_mass(potential: LogNormPotential, center, radius: float, theta_nodes: int, angular_nodes: int) -> float:
    t, a, b, w = sphere_rule_c2(theta_nodes, angular_nodes)
    points, frame = _sphere_frame(np.asarray(center, dtype=complex), radius, t, a, b)
    grad, hess = potential.derivatives(points)
    conj_frame = frame.conj()
    total = np.zeros(len(points), dtype=complex)
    for l in range(2):
        for j in range(2):
            for k in range(2):
                det_bar = np.linalg.det(np.stack([conj_frame[:, l], frame[:, j], conj_frame[:, k]], axis=-2))
                det = np.linalg.det(np.stack([frame[:, l], frame[:, j], conj_frame[:, k]], axis=-2))
                total += hess[:, j, k] * (grad[:, l].conj() * det_bar - grad[:, l] * det)
    eta = (-1.0 / (8 * math.pi ** 2)) * total
    if np.max(np.abs(eta.imag)) > 1e-6 * (1.0 + np.max(np.abs(eta.real))):
        raise QuadratureError("boundary form is not real on the sphere; derivatives are inconsistent")
    # negative orientation of (t, a, b)
    return float(-np.sum(w * eta.real))


def king_residue_check(
    F,
    radius: float,
    center=(0j, 0j),
    eps: Optional[float] = None,
    theta_nodes: int = 32,
    angular_nodes: int = 48,
    radial_nodes: int = 48,
    workers: int = 1,
) -> KingReport:
    """
    Infer the point mass of ``(dd^c log ||F||^2)^2`` at the center of a ball.

    Args:
        F: Lift, tuple or representation of two variables
        radius: Ball radius
        center: Ball center
        eps: Tube radius for the interior mass (default ``radius / 16``)
        theta_nodes: Gauss-Legendre nodes in the polar angle
        angular_nodes: Trapezoid nodes per azimuth
        radial_nodes: Radial nodes of the interior ball rule
        workers: Threads for the interior quadrature

    Returns:
        KingReport; ``atom = boundary - interior``
    """
    lift = as_lift(F, nvars=2)
    if lift.nvars != 2:
        raise ValueError(f"the residue check needs a map of two variables, got {lift.nvars}")
    potential = LogNormPotential(lift)
    boundary = _boundary_mass(potential, center, radius, theta_nodes, angular_nodes)
    coarse = _boundary_mass(potential, center, radius, max(4, theta_nodes // 2), max(8, angular_nodes // 2))
    eps = radius / 16 if eps is None else eps
    dom = BallSpec(tuple(complex(c) for c in center), radius, radial_nodes=radial_nodes, angular_nodes=angular_nodes)
    interior = mixed_ma_mass(potential, dom, p=2, eps=eps, workers=workers)
    atom = boundary - interior.value
    report = KingReport(
        boundary=boundary,
        interior=interior.value,
        atom=atom,
        residual=abs(atom - round(atom)),
        radius=radius,
        boundary_error=abs(boundary - coarse),
        interior_error=interior.error,
    )
    logger.info(f"King check at radius {radius}: boundary {boundary:.6f}, interior {interior.value:.6f}, atom {atom:.6f}")
    return report


def local_degree(G: Union[PolyTuple, HomogRep]) -> int:
    """
    Local mapping degree at the origin of a germ with diagonal leading monomials.

    Each component must contain a pure power ``z_j^(a_j)`` of a distinct
    variable, and every other monomial ``z^e`` of that component must have
    weighted degree ``sum_i e_i / a_i > 1``. The degree is then ``prod_j a_j``.

    Raises:
        ValueError: The germ is not of this form
    """
    t = G.tuple if isinstance(G, HomogRep) else G
    n = t.nvars
    if len(t) != n:
        raise ValueError(f"local degree needs {n} components in {n} variables, got {len(t)}")
    pure = []
    for component in t.components:
        powers = {}
        for exps, _ in component.terms:
            support = [i for i, e in enumerate(exps) if e]
            if len(support) == 1:
                i = support[0]
                powers[i] = min(powers.get(i, exps[i]), exps[i])
        pure.append(powers)
    for assignment in permutations(range(n)):
        if not all(assignment[j] in pure[j] for j in range(n)):
            continue
        weights = [0] * n
        for j, i in enumerate(assignment):
            weights[i] = pure[j][i]
        leading_ok = True
        for j, component in enumerate(t.components):
            i = assignment[j]
            for exps, _ in component.terms:
                if exps == tuple(weights[i] if v == i else 0 for v in range(n)):
                    continue
                if sum(e / w for e, w in zip(exps, weights)) <= 1:
                    leading_ok = False
                    break
            if not leading_ok:
                break
        if leading_ok:
            return int(np.prod(weights))
    raise ValueError(f"{t} has no diagonal leading monomials; its local degree is not determined here")


__all__ = ['KingReport', 'king_residue_check', 'local_degree']
