"""
Overflow-safe evaluation of polynomial tuples.

Iterates of monomial maps carry exponents like 2^40, so ``z**e`` overflows
long before anything interesting happens. Two evaluators are provided here:

- :func:`eval_log` works in log-polar coordinates at a single point. Single-term
  components are exact; multi-term components use max-rescaled summation.
- :func:`evaluate_scaled` is the vectorized path used by quadrature. Each
  point's values and Jacobian are divided by one common positive factor, which
  leaves every projective quantity (and the Hessian of ``log ||F||^2``)
  unchanged.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from .sparse import PolyTuple, VariableCountError

logger = logging.getLogger(__name__)

# stands in for log|0| so that 0 * log|0| stays 0 inside matrix products
LOG_ZERO = -1e300


class IndeterminateEvaluationError(Exception):
    """Raised when every component of a tuple vanishes at the evaluation point."""
    pass


@dataclass(frozen=True)
class LogValue:
    """One component in log-polar form: value = exp(log_modulus + i*phase)."""

    log_modulus: float
    phase: float
    exact: bool
    error_bound: float = 0.0

    @property
    def is_zero(self) -> bool:
        return self.log_modulus == -math.inf


@dataclass(frozen=True)
class LogEvaluation:
    """Result of :func:`eval_log`."""

    values: Tuple[LogValue, ...]

    @property
    def exact(self) -> bool:
        return all(v.exact for v in self.values)

    @property
    def log_moduli(self) -> List[float]:
        return [v.log_modulus for v in self.values]

    def normalized(self) -> np.ndarray:
        """Homogeneous coordinates scaled to max modulus 1."""
        top = max(self.log_moduli)
        return np.array([
            0j if v.is_zero else math.exp(v.log_modulus - top) * complex(math.cos(v.phase), math.sin(v.phase))
            for v in self.values
        ])


def _term_log(exps, coeff, point) -> Tuple[float, float]:
    log_mod = coeff.log_abs()
    phase = coeff.phase()
    for e, (lm, ph) in zip(exps, point):
        if e == 0:
            continue
        if lm == -math.inf:
            return -math.inf, 0.0
        log_mod += float(e) * lm
        phase += e * ph
    return log_mod, math.remainder(phase, 2 * math.pi)


def eval_log(t: PolyTuple, point: Sequence[Tuple[float, float]]) -> LogEvaluation:
    """
    Evaluate a tuple at a point given in log-polar coordinates.

    Args:
        t: Polynomial tuple
        point: Per variable ``(log|z_i|, arg z_i)``; ``log|z_i| = -inf`` encodes 0

    Returns:
        Per-component log-modulus and phase with an exactness flag

    Raises:
        VariableCountError: If the point has the wrong number of coordinates
        IndeterminateEvaluationError: If all components evaluate to zero
    """
    if len(point) != t.nvars:
        raise VariableCountError(f"point has {len(point)} coordinates, tuple has {t.nvars} variables")
    values = []
    for component in t.components:
        logs = [_term_log(e, c, point) for e, c in component.terms]
        logs = [(lm, ph) for lm, ph in logs if lm != -math.inf]
        if not logs:
            values.append(LogValue(-math.inf, 0.0, exact=True))
            continue
        if len(logs) == 1:
            values.append(LogValue(logs[0][0], logs[0][1], exact=True))
            continue
        top = max(lm for lm, _ in logs)
        total = sum(math.exp(lm - top) * complex(math.cos(ph), math.sin(ph)) for lm, ph in logs)
        # relative rounding of the rescaled sum, at most one ulp per term
        bound = len(logs) * np.finfo(float).eps
        if abs(total) <= bound:
            values.append(LogValue(-math.inf, 0.0, exact=False, error_bound=bound))
            continue
        values.append(LogValue(
            top + math.log(abs(total)),
            math.atan2(total.imag, total.real),
            exact=False,
            error_bound=bound / abs(total),
        ))
    if all(v.is_zero for v in values):
        raise IndeterminateEvaluationError(f"all components of {t} vanish at {list(point)}")
    return LogEvaluation(tuple(values))


class CompiledTuple:
    """
    Floating-point tables of a polynomial tuple for repeated evaluation.

    Exponents are stored as floats; only their products with log-moduli are
    ever formed, so exponents far beyond the float range of ``z**e`` are fine.
    """

    def __init__(self, t: PolyTuple):
        self.tuple = t
        self.nvars = t.nvars
        self.ncomponents = len(t)
        exps, coeffs, owner = [], [], []
        for j, component in enumerate(t.components):
            for e, c in component.terms:
                exps.append([float(x) for x in e])
                coeffs.append(complex(c))
                owner.append(j)
        self.exponents = np.array(exps, dtype=float).reshape(len(exps), self.nvars)
        self.coefficients = np.array(coeffs, dtype=complex)
        self.owner = np.array(owner, dtype=int)
        # owner one-hot for scattering term values into components
        self.scatter = np.zeros((len(exps), self.ncomponents))
        self.scatter[np.arange(len(exps)), self.owner] = 1.0

    def __repr__(self) -> str:
        return f"CompiledTuple({len(self.coefficients)} terms, {self.ncomponents} components)"


def _complex_log(z: np.ndarray) -> np.ndarray:
    modulus = np.abs(z)
    with np.errstate(divide="ignore"):
        log_mod = np.where(modulus > 0, np.log(np.where(modulus > 0, modulus, 1.0)), LOG_ZERO)
    return log_mod + 1j * np.angle(z)


def evaluate_scaled(
    t,
    points: np.ndarray,
    with_jacobian: bool = False,
) -> Tuple[np.ndarray, Optional[np.ndarray], np.ndarray]:
    """
    Rescaled values (and Jacobian) of a tuple at many points.

    Args:
        t: ``PolyTuple`` or ``CompiledTuple``
        points: Complex array of shape ``(m, n)``
        with_jacobian: Also return ``dF_j/dz_i``

    Returns:
        ``(F, J, log_scale)`` with ``F`` of shape ``(m, N+1)``, ``J`` of shape
        ``(m, N+1, n)`` or ``None``, and the per-point log of the common factor
        that was divided out, so that ``true F = F * exp(log_scale)``
    """
    compiled = t if isinstance(t, CompiledTuple) else CompiledTuple(t)
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    if pts.shape[1] != compiled.nvars:
        raise VariableCountError(f"points have {pts.shape[1]} coordinates, tuple has {compiled.nvars} variables")
    logz = _complex_log(pts)
    log_c = _complex_log(compiled.coefficients)
    with np.errstate(over="ignore", invalid="ignore"):
        term_logs = logz @ compiled.exponents.T + log_c[None, :]
    # terms through a zero coordinate carry a huge negative real part
    scale = np.max(term_logs.real, axis=1)
    scale = np.where(np.isfinite(scale) & (scale > LOG_ZERO / 2), scale, 0.0)
    with np.errstate(under="ignore", over="ignore", invalid="ignore"):
        term_values = np.exp(term_logs - scale[:, None])
    term_values = np.nan_to_num(term_values, nan=0.0, posinf=0.0, neginf=0.0)
    values = term_values @ compiled.scatter

    jacobian = None
    if with_jacobian:
        jacobian = np.zeros((pts.shape[0], compiled.ncomponents, compiled.nvars), dtype=complex)
        for i in range(compiled.nvars):
            e_i = compiled.exponents[:, i]
            live = e_i > 0
            if not np.any(live):
                continue
            shifted = compiled.exponents[live].copy()
            shifted[:, i] -= 1.0
            d_log_c = log_c[live] + np.log(e_i[live])
            with np.errstate(over="ignore", invalid="ignore"):
                d_logs = logz @ shifted.T + d_log_c[None, :]
            with np.errstate(under="ignore", over="ignore", invalid="ignore"):
                d_values = np.exp(d_logs - scale[:, None])
            d_values = np.nan_to_num(d_values, nan=0.0, posinf=0.0, neginf=0.0)
            jacobian[:, :, i] = d_values @ compiled.scatter[live]
    return values, jacobian, scale


__all__ = [
    'IndeterminateEvaluationError',
    'LogValue',
    'LogEvaluation',
    'CompiledTuple',
    'eval_log',
    'evaluate_scaled',
    'LOG_ZERO',
]
