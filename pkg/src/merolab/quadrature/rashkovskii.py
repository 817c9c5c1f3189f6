"""
Monge-Ampere masses of the potentials ``log(|z1|^2 + |z1 - eps|^2 + |z2|^2 + |z3|^k)``.

For ``eps > 0`` the potential is smooth on the ball and its order-3 mass is
estimated by Monte Carlo. For ``eps = 0`` the potential is
``log ||(sqrt 2 z1, z2, z3^(k/2))||^2`` when ``k`` is even and all of its mass
at the origin is the local degree ``k/2`` of that germ.
"""

from fractions import Fraction
from typing import Optional, Sequence, Union
import logging

from ..poly import PolyTuple, SparsePoly
from .base import BallSpec, MassReport, SampleBudgetError
from .king import local_degree
from .lift import RashkovskiiPotential
from .mass import graph_volume, mixed_ma_masses
from .montecarlo import LogRadialLaw

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]


def default_ball(samples: int = 200_000) -> BallSpec:
    """The ball of radius 1/2 around the origin of C^3."""
    return BallSpec((0j, 0j, 0j), 0.5, samples=samples)


def rashkovskii_eps(k: int) -> Fraction:
    """Parameter ``eps_k = 2^(-4k)`` used for the k-th member of the family."""
    return Fraction(1, 2 ** (4 * k))


def rashkovskii_law(k: int, eps: float, radius: float = 0.5) -> LogRadialLaw:
    """
    Importance law matched to the scales of the potential.

    The mass sits where ``|z1|, |z2| ~ eps`` and ``|z3|^k ~ eps^2``.

    Args:
        k: Exponent of ``|z3|``
        eps: Shift of the second term, converted to float. At ``eps = 0`` the
            potential is singular at the origin and every inner radius drops
            to the floor ``1e-9 * radius``.
        radius: Ball radius; the outer radius of the law is twice this

    Returns:
        LogRadialLaw focused at ``(eps/2, 0, 0)``
    """
    eps = float(eps)
    floor = 1e-9 * radius
    small = max(eps / 8, floor)
    third = max(eps ** (2.0 / k) / 8, floor) if eps > 0 else floor
    return LogRadialLaw(
        focus=(eps / 2 + 0j, 0j, 0j),
        rho_min=(small, small, third),
        rho_max=(2 * radius,) * 3,
    )


def rashkovskii_lift(k: int, eps: Number) -> PolyTuple:
    """The holomorphic family ``z -> [z1 : z1 - eps : z2 : z3^k]`` as a lift on C^3."""
    z1, z2, z3 = SparsePoly.variables(3)
    return PolyTuple([z1, z1 - SparsePoly.constant(eps, 3), z2, z3 ** k])


def rashkovskii_mass(
    k: int,
    eps: float,
    dom: Optional[BallSpec] = None,
    budget: Optional[int] = None,
    seed: int = 0,
    workers: int = 1,
    rel_tol: Optional[float] = None,
    progress: bool = False,
) -> MassReport:
    """
    Order-3 Monge-Ampere mass of ``u_{eps,k}`` over a ball in C^3.

    Args:
        k: Exponent of ``|z3|``
        eps: Shift of the second term; 0 gives the singular limit
        dom: Ball (default: radius 1/2 around the origin)
        budget: Monte Carlo samples (default: the ball's sample count)
        seed: Root seed
        workers: Sample streams and threads
        rel_tol: Fail if the relative standard error exceeds this
        progress: Show a progress bar

    Returns:
        MassReport; for ``eps = 0`` and even ``k`` it carries the exact atom

    Raises:
        SampleBudgetError: The budget cannot reach ``rel_tol``
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    dom = dom or default_ball()
    if budget is not None:
        dom = BallSpec(dom.center, dom.radius, samples=budget)
    potential = RashkovskiiPotential(k, float(eps))
    law = rashkovskii_law(k, float(eps), dom.radius)
    report = mixed_ma_masses(
        potential, dom, orders=[3], eps=0.0, extrapolate=False,
        seed=seed, workers=workers, progress=progress, law=law,
    )[3]
    report.eps = float(eps)
    if eps == 0 and k % 2 == 0:
        z1, z2, z3 = SparsePoly.variables(3)
        report.exact_atom = float(local_degree(PolyTuple([z1, z2, z3 ** (k // 2)])))
    if rel_tol is not None and report.value > 0 and report.error > rel_tol * report.value:
        raise SampleBudgetError(
            f"relative error {report.error / report.value:.3f} exceeds {rel_tol} with {report.budget} samples"
        )
    logger.info(f"Rashkovskii mass k={k}, eps={float(eps):g}: {report.value:.4f} +- {report.error:.4f}")
    return report


def rashkovskii_graph_volume(
    k: int,
    eps: Optional[Number] = None,
    dom: Optional[BallSpec] = None,
    seed: int = 0,
    workers: int = 1,
    progress: bool = False,
) -> MassReport:
    """Graph volume of ``[z1 : z1 - eps : z2 : z3^k]`` over a ball in C^3 (default ``eps = eps_k``)."""
    eps = rashkovskii_eps(k) if eps is None else eps
    dom = dom or default_ball()
    # |z3^k|^2 = |z3|^(2k): the matching law is the one for exponent 2k
    law = rashkovskii_law(2 * k, float(eps), dom.radius)
    return graph_volume(
        rashkovskii_lift(k, eps), dom, eps=0.0, extrapolate=False,
        seed=seed, workers=workers, progress=progress, law=law,
    )


def rashkovskii_series(ks: Sequence[int], **kwargs) -> list:
    """Masses at ``eps_k`` for each ``k``."""
    return [rashkovskii_mass(k, float(rashkovskii_eps(k)), **kwargs) for k in ks]


__all__ = [
    'default_ball',
    'rashkovskii_eps',
    'rashkovskii_law',
    'rashkovskii_lift',
    'rashkovskii_mass',
    'rashkovskii_graph_volume',
    'rashkovskii_series',
]
