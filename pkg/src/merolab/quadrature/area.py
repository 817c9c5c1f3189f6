"""
Fubini-Study area of holomorphic disks.

The interior form integrates the pullback ``dd^c log ||F||^2`` over the disk;
the boundary form applies Stokes: the boundary integral of ``d^c log ||F||^2``
minus the number of common zeros of the lift inside the disk.
"""

import logging

import numpy as np

from .base import AreaReport, ContourSpec, ContourVanishingError
from .contour import common_zero_count
from .lift import LogNormPotential, as_lift
from .rules import disk_rule

logger = logging.getLogger(__name__)


def _interior(potential: LogNormPotential, d: ContourSpec, panels: int, nodes: int, angular: int) -> float:
    points, weights = disk_rule(d.center, d.radius, panels, nodes, angular, grading=0.25)
    hess = potential.hessian(points[:, None])
    density = hess[:, 0, 0].real / np.pi
    return float(np.sum(weights * density))


def fs_area_interior(f, d: ContourSpec, panels: int = 12, nodes: int = 12, angular: int = 64) -> AreaReport:
    """
    Area of ``f`` restricted to a disk, by quadrature of the pulled-back form.

    Args:
        f: Lift, tuple, representation or callable of one variable
        d: Disk (center and radius)
        panels: Graded radial panels
        nodes: Gauss-Legendre nodes per panel
        angular: Trapezoid nodes in the angle

    Returns:
        AreaReport whose error is the gap to a rule with half the nodes
    """
    lift = as_lift(f, nvars=1)
    if lift.nvars != 1:
        raise ValueError(f"disk areas need a map of one variable, got {lift.nvars}")
    potential = LogNormPotential(lift)
    fine = _interior(potential, d, panels, nodes, angular)
    coarse = _interior(potential, d, panels, max(2, nodes // 2), max(8, angular // 2))
    report = AreaReport(
        value=fine,
        error=abs(fine - coarse) + 1e-14,
        method="interior",
        nodes=panels * nodes * angular,
    )
    logger.debug(f"Interior FS area {report.value:.10f} +- {report.error:.1e}")
    return report


def _boundary(potential: LogNormPotential, d: ContourSpec, nodes: int) -> float:
    z, theta = d.points(nodes)
    values, _ = potential.lift.evaluate(z[:, None])
    if np.min(np.sum(np.abs(values) ** 2, axis=1)) < 1e-24:
        raise ContourVanishingError(f"lift vanishes on the boundary of {d}")
    grad = potential.gradient(z[:, None])[:, 0]
    # d^c u = (1/2pi) Re(u_z (z - c) ) dtheta on the circle
    integrand = np.real(grad * (z - d.center)) / (2 * np.pi)
    return float(np.mean(integrand) * 2 * np.pi)


def fs_area_boundary(F, d: ContourSpec, seed: int = 0, max_nodes: int = 1 << 16, tol: float = 1e-12) -> AreaReport:
    """
    Area of a disk under a lift from its boundary values.

    Args:
        F: Lift, tuple, representation or callable of one variable
        d: Disk; ``d.nodes`` is the starting trapezoid count
        seed: Seed for the generic combinations of black-box lifts
        max_nodes: Node ceiling for the boundary integral
        tol: Agreement between successive node doublings

    Raises:
        ContourVanishingError: The lift vanishes on the boundary circle
        ZeroCountDisagreementError: Generic combinations disagree on the zero count
    """
    lift = as_lift(F, nvars=1)
    if lift.nvars != 1:
        raise ValueError(f"disk areas need a map of one variable, got {lift.nvars}")
    potential = LogNormPotential(lift)
    nodes = d.nodes
    previous = _boundary(potential, d, nodes)
    while True:
        nodes *= 2
        current = _boundary(potential, d, nodes)
        gap = abs(current - previous)
        if gap < tol or nodes >= max_nodes:
            break
        previous = current
    n_zeros = common_zero_count(lift, d, seed=seed)
    report = AreaReport(
        value=current - n_zeros,
        error=gap + 1e-14,
        method="boundary",
        boundary_integral=current,
        n_zeros=n_zeros,
        nodes=nodes,
    )
    logger.debug(f"Boundary FS area {report.value:.10f} (boundary {current:.10f}, {n_zeros} zeros)")
    return report


__all__ = ['fs_area_interior', 'fs_area_boundary']
