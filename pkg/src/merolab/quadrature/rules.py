"""
Deterministic quadrature rules.

Radial integrals use Gauss-Legendre on panels graded geometrically toward the
center, where log-norm integrands concentrate; angles use the trapezoid rule,
which is spectrally accurate for periodic integrands. Weights always include
the Lebesgue Jacobian, so ``sum(w * f(points))`` approximates ``int f dlambda``.
"""

from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from .base import BallSpec, PolydiskSpec

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def _legendre(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(nodes)


def graded_breakpoints(radius: float, panels: int, grading: float, inner: float = 0.0) -> np.ndarray:
    """Breakpoints ``inner < inner + w*g^(P-1) < ... < inner + w = radius``, graded toward ``inner``."""
    if not 0 < grading < 1:
        raise ValueError(f"grading must lie in (0, 1), got {grading}")
    if not 0 <= inner < radius:
        raise ValueError(f"inner radius {inner} must lie in [0, {radius})")
    width = radius - inner
    steps = inner + width * grading ** np.arange(panels - 1, -1, -1, dtype=float)
    return np.concatenate([[inner], steps])


def gauss_panels(breakpoints: np.ndarray, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule on consecutive breakpoints."""
    x, w = _legendre(nodes)
    a, b = breakpoints[:-1, None], breakpoints[1:, None]
    points = 0.5 * (b - a) * x[None, :] + 0.5 * (a + b)
    weights = 0.5 * (b - a) * w[None, :]
    return points.ravel(), weights.ravel()


def radial_rule(radius: float, panels: int, nodes: int, grading: float,
                inner: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ``int_inner^radius g(rho) drho``."""
    return gauss_panels(graded_breakpoints(radius, panels, grading, inner), nodes)


def angular_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    theta = 2 * np.pi * (np.arange(nodes) + 0.5) / nodes
    return theta, np.full(nodes, 2 * np.pi / nodes)


def disk_rule(center: complex, radius: float, panels: int, nodes: int, angular: int,
              grading: float, inner: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    """Points and Lebesgue weights of a polar product rule on a disk or annulus."""
    rho, w_rho = radial_rule(radius, panels, nodes, grading, inner)
    theta, w_theta = angular_rule(angular)
    points = center + (rho[:, None] * np.exp(1j * theta[None, :])).ravel()
    weights = (w_rho[:, None] * rho[:, None] * w_theta[None, :]).ravel()
    return points, weights


def polydisk_rule(dom: PolydiskSpec, coarse: bool = False, inner: Optional[Sequence[float]] = None,
                  chunk: int = 1 << 18) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """
    Tensor product of disk rules, yielded in chunks of points.

    Args:
        dom: Polydisk with its node budget
        coarse: Use half the nodes per panel (for error estimation)
        inner: Per-variable inner radius; a positive entry turns that
            factor into an annulus
        chunk: Approximate number of points per yielded block

    Yields:
        ``(points, weights)`` with points of shape ``(m, n)``
    """
    nodes = max(2, dom.nodes_per_panel // 2) if coarse else dom.nodes_per_panel
    inner = tuple(inner) if inner is not None else (0.0,) * dom.dimension
    factors = [
        disk_rule(c, r, dom.radial_panels, nodes, dom.angular_nodes, dom.grading, rin)
        for c, r, rin in zip(dom.center, dom.radii, inner)
    ]
    if len(factors) == 1:
        points, weights = factors[0]
        for start in range(0, len(points), chunk):
            yield points[start:start + chunk, None], weights[start:start + chunk]
        return
    if len(factors) != 2:
        raise ValueError("tensor rules are limited to two complex variables")
    (p1, w1), (p2, w2) = factors
    block = max(1, chunk // len(p2))
    for start in range(0, len(p1), block):
        a, wa = p1[start:start + block], w1[start:start + block]
        points = np.stack(np.broadcast_arrays(a[:, None], p2[None, :]), axis=-1).reshape(-1, 2)
        weights = (wa[:, None] * w2[None, :]).ravel()
        yield points, weights


def ball_rule_c2(dom: BallSpec, coarse: bool = False, inner: float = 0.0) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """
    Product rule on a ball in C^2 in the coordinates
    ``z = c + r (cos t e^{ia}, sin t e^{ib})``, with Lebesgue element
    ``r^3 cos t sin t dr dt da db``. With ``inner > 0`` the rule covers the
    spherical shell ``inner < |z - c| < radius``.
    """
    if dom.dimension != 2:
        raise ValueError("ball_rule_c2 needs a ball in C^2")
    radial = max(4, dom.radial_nodes // 2) if coarse else dom.radial_nodes
    angular = max(4, dom.angular_nodes // 2) if coarse else dom.angular_nodes
    panels = max(1, radial // 8)
    r, w_r = radial_rule(dom.radius, panels, 8, 0.25, inner)
    t, w_t = gauss_panels(np.array([0.0, math.pi / 4, math.pi / 2]), max(2, radial // 4))
    a, w_a = angular_rule(angular)
    center = np.asarray(dom.center, dtype=complex)
    # outer loop over the radius keeps blocks bounded
    for ri, wri in zip(r, w_r):
        tt, aa, bb = np.meshgrid(t, a, a, indexing="ij")
        weights = (wri * ri ** 3 * np.cos(tt) * np.sin(tt)
                   * w_t[:, None, None] * w_a[None, :, None] * w_a[None, None, :]).ravel()
        z1 = ri * np.cos(tt) * np.exp(1j * aa)
        z2 = ri * np.sin(tt) * np.exp(1j * bb)
        points = center + np.stack([z1.ravel(), z2.ravel()], axis=-1)
        yield points, weights


def sphere_rule_c2(theta_nodes: int, angular_nodes: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Parameter nodes for the 3-sphere in C^2.

    Returns:
        ``(theta, alpha, beta, weights)`` flattened, for integrals
        ``int dtheta dalpha dbeta`` over ``[0, pi/2] x [0, 2pi]^2``
    """
    t, w_t = gauss_panels(np.array([0.0, math.pi / 4, math.pi / 2]), max(2, theta_nodes // 2))
    a, w_a = angular_rule(angular_nodes)
    tt, aa, bb = np.meshgrid(t, a, a, indexing="ij")
    weights = w_t[:, None, None] * w_a[None, :, None] * w_a[None, None, :]
    return tt.ravel(), aa.ravel(), bb.ravel(), weights.ravel()


__all__ = [
    'graded_breakpoints',
    'gauss_panels',
    'radial_rule',
    'angular_rule',
    'disk_rule',
    'polydisk_rule',
    'ball_rule_c2',
    'sphere_rule_c2',
]
