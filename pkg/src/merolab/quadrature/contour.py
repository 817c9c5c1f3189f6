"""
Argument-principle zero counting on circles.

The winding number ``(1/2 pi i) \\oint h'/h dz`` is evaluated with the
trapezoid rule; ``h'`` comes from the exact derivative for polynomials and
from an FFT spectral derivative for black-box functions. Node counts double
from the contour's floor until the result sits within the residual limit of an
integer.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Union
import logging

import numpy as np

from ..poly import SparsePoly, poly_gcd
from .base import ContourSpec, ContourVanishingError, ResidualTooLargeError, ZeroCountDisagreementError
from .lift import LiftEvaluator

logger = logging.getLogger(__name__)

ScalarFunction = Union[SparsePoly, Callable[[np.ndarray], np.ndarray]]

# relative modulus below which h counts as vanishing on the contour
_VANISH_RTOL = 1e-10


@dataclass
class WindingReport:
    """Winding integral of a function around a circle."""

    count: int
    raw: complex
    residual: float
    min_modulus: float
    nodes: int


def _scalar_values(h: ScalarFunction, z: np.ndarray) -> np.ndarray:
    if isinstance(h, SparsePoly):
        if h.nvars != 1:
            raise ValueError(f"contour functions take one variable, got {h.nvars}")
        return h.evaluate(z[:, None])
    return np.asarray(h(z), dtype=complex).ravel()


def _winding(h: ScalarFunction, contour: ContourSpec, nodes: int):
    z, theta = contour.points(nodes)
    values = _scalar_values(h, z)
    modulus = np.abs(values)
    min_modulus = float(modulus.min())
    if not np.all(np.isfinite(values)) or min_modulus <= _VANISH_RTOL * max(float(modulus.max()), 1e-300):
        raise ContourVanishingError(
            f"function vanishes on |z - {contour.center}| = {contour.radius} (min modulus {min_modulus:.3e})"
        )
    if isinstance(h, SparsePoly):
        dz_dtheta = 1j * (z - contour.center)
        dh_dtheta = h.derivative(0).evaluate(z[:, None]) * dz_dtheta
    else:
        freqs = np.fft.fftfreq(nodes, d=1.0 / nodes)
        dh_dtheta = np.fft.ifft(1j * freqs * np.fft.fft(values))
    raw = complex(np.mean(dh_dtheta / values) / 1j)
    return raw, min_modulus


def winding_report(
    h: ScalarFunction,
    contour: ContourSpec,
    residual_limit: float = 0.1,
    max_nodes: int = 1 << 16,
) -> WindingReport:
    """
    Winding number of ``h`` around a circle, doubling nodes until it is integral.

    Raises:
        ContourVanishingError: ``h`` (nearly) vanishes on the contour
        ResidualTooLargeError: No node count up to ``max_nodes`` gives a residual
            below ``residual_limit``
    """
    nodes = contour.nodes
    while True:
        raw, min_modulus = _winding(h, contour, nodes)
        count = int(round(raw.real))
        residual = float(abs(raw - count))
        if residual < residual_limit:
            logger.debug(f"Winding {count} on {contour} with {nodes} nodes (residual {residual:.2e})")
            return WindingReport(count, raw, residual, min_modulus, nodes)
        if nodes >= max_nodes:
            raise ResidualTooLargeError(
                f"winding integral {raw:.4f} is {residual:.3f} from an integer after {nodes} nodes"
            )
        nodes *= 2


def zero_count_contour(h: ScalarFunction, contour: ContourSpec, residual_limit: float = 0.1) -> int:
    """Number of zeros of ``h`` inside the circle, with multiplicity."""
    return winding_report(h, contour, residual_limit).count


def _power_sums(h: ScalarFunction, contour: ContourSpec, count: int, nodes: int) -> np.ndarray:
    """``s_p = (1/2 pi i) \\oint w^p h'/h dz`` in the scaled variable ``w = (z - c)/r``."""
    z, theta = contour.points(nodes)
    values = _scalar_values(h, z)
    if isinstance(h, SparsePoly):
        dh_dtheta = h.derivative(0).evaluate(z[:, None]) * 1j * (z - contour.center)
    else:
        freqs = np.fft.fftfreq(nodes, d=1.0 / nodes)
        dh_dtheta = np.fft.ifft(1j * freqs * np.fft.fft(values))
    w = np.exp(1j * theta)
    log_derivative = dh_dtheta / values / 1j
    return np.array([np.mean(w ** p * log_derivative) for p in range(count + 1)])


def locate_zeros(h: ScalarFunction, contour: ContourSpec, count: Optional[int] = None) -> np.ndarray:
    """
    Zeros of ``h`` inside a circle, each repeated by multiplicity.

    Polynomials are solved directly; other functions go through contour
    moments, Newton's identities and the roots of the resulting polynomial.
    """
    if count is None:
        count = zero_count_contour(h, contour)
    if count == 0:
        return np.zeros(0, dtype=complex)
    if isinstance(h, SparsePoly):
        roots = np.roots(h.univariate_coefficients(0))
        inside = roots[np.abs(roots - contour.center) < contour.radius]
        return np.sort_complex(inside)
    nodes = max(contour.nodes, 16 * count)
    sums = _power_sums(h, contour, count, nodes)
    # Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i
    e = [1.0 + 0j]
    for k in range(1, count + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * sums[i] for i in range(1, k + 1))
        e.append(acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(count + 1)]
    w = np.roots(coeffs)
    return np.sort_complex(contour.center + contour.radius * w)


def _match_count(a: np.ndarray, b: np.ndarray, tol: float) -> int:
    remaining = list(b)
    matched = 0
    for z in a:
        if not remaining:
            break
        gaps = [abs(z - w) for w in remaining]
        j = int(np.argmin(gaps))
        if gaps[j] < tol:
            matched += 1
            remaining.pop(j)
    return matched


def common_zero_count(
    lift: LiftEvaluator,
    contour: ContourSpec,
    seed: int = 0,
    residual_limit: float = 0.1,
) -> int:
    """
    Number of common zeros of a lift's components inside a circle.

    Polynomial lifts use the zeros of the GCD of the components. Black-box
    lifts locate the zeros of generic linear combinations and keep the ones
    two combinations share; two independent pairings must agree.

    Raises:
        ZeroCountDisagreementError: The pairings give different counts
    """
    if lift.nvars != 1:
        raise ValueError("common zeros are counted for lifts of one variable")
    if lift.is_polynomial:
        components = [c for c in lift.poly.components if not c.is_zero]
        if not components:
            raise ContourVanishingError("lift is identically zero")
        g = components[0]
        for c in components[1:]:
            g = poly_gcd(g, c)
            if g.is_constant:
                return 0
        return zero_count_contour(g, contour, residual_limit)

    rng = np.random.default_rng(seed)
    z0, _ = contour.points(8)
    width = lift.values(z0[:, None]).shape[1]
    weights = rng.standard_normal((3, width)) + 1j * rng.standard_normal((3, width))

    def combination(row: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
        return lambda z: lift.values(np.asarray(z)[:, None]) @ row

    zeros: List[np.ndarray] = [locate_zeros(combination(row), contour) for row in weights]
    tol = 1e-5 * contour.radius
    first = _match_count(zeros[0], zeros[1], tol)
    second = _match_count(zeros[0], zeros[2], tol)
    if first != second:
        raise ZeroCountDisagreementError(
            f"generic combinations share {first} and {second} zeros inside {contour}"
        )
    logger.debug(f"Black-box lift has {first} common zeros inside {contour}")
    return first


__all__ = [
    'WindingReport',
    'winding_report',
    'zero_count_contour',
    'locate_zeros',
    'common_zero_count',
]
