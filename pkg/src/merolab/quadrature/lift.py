"""
Lifts and plurisubharmonic potentials.

A :class:`LiftEvaluator` returns values and holomorphic Jacobians of a lift
``F: C^n -> C^{N+1}``. Polynomial lifts use the closed-form Jacobian through
the rescaled evaluator; black-box lifts use sixth-order central differences.

Potentials expose ``gradient`` (``du/dz``) and ``hessian`` (``d^2u/dz_j dzbar_k``)
on point batches; that is all the mass and boundary integrals need.
"""

from typing import Callable, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from ..poly import CompiledTuple, PolyTuple, evaluate_scaled
from ..projective import HomogRep, dehomogenize

logger = logging.getLogger(__name__)

# sixth-order central difference stencil for the first derivative
_STENCIL_OFFSETS = np.array([-3, -2, -1, 1, 2, 3], dtype=float)
_STENCIL_WEIGHTS = np.array([-1, 9, -45, 45, -9, 1], dtype=float) / 60.0


class LiftEvaluator:
    """
    Values and Jacobians of a holomorphic lift.

    Args:
        source: A ``PolyTuple`` (closed-form path) or a callable taking an
            ``(m, n)`` complex array and returning ``(m, N+1)``
        nvars: Number of complex variables (required for callables)
        rel_step: Relative finite-difference step for callables
    """

    def __init__(
        self,
        source: Union[PolyTuple, Callable[[np.ndarray], np.ndarray]],
        nvars: Optional[int] = None,
        rel_step: float = 1e-3,
    ):
        if isinstance(source, PolyTuple):
            self.poly = source
            self._compiled = CompiledTuple(source)
            self.nvars = source.nvars
            self.ncomponents = len(source)
            self._fn = None
        else:
            if nvars is None:
                raise ValueError("nvars is required for black-box lifts")
            self.poly = None
            self._compiled = None
            self._fn = source
            self.nvars = nvars
            self.ncomponents = None
        self.rel_step = rel_step

    @property
    def is_polynomial(self) -> bool:
        return self.poly is not None

    @property
    def error_model(self) -> float:
        """Relative error of finite-difference derivatives (roundoff over step)."""
        if self.is_polynomial:
            return 0.0
        return float(np.finfo(float).eps / self.rel_step + self.rel_step ** 6)

    def values(self, points: np.ndarray) -> np.ndarray:
        """Unscaled values (may overflow for huge exponents; used for zero counting)."""
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        if self.is_polynomial:
            return self.poly.evaluate(pts)
        return np.atleast_2d(np.asarray(self._fn(pts), dtype=complex))

    def evaluate(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Values and Jacobian, both divided by one positive factor per point.

        Returns:
            ``(F, J)`` with shapes ``(m, N+1)`` and ``(m, N+1, n)``
        """
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        if self.is_polynomial:
            values, jacobian, _ = evaluate_scaled(self._compiled, pts, with_jacobian=True)
            return values, jacobian
        return self._values(pts), self._fd_jacobian(pts)

    def _values(self, pts: np.ndarray) -> np.ndarray:
        return np.atleast_2d(np.asarray(self._fn(pts), dtype=complex))

    def _fd_jacobian(self, pts: np.ndarray) -> np.ndarray:
        scale = np.maximum(1.0, np.max(np.abs(pts), axis=1))
        h = self.rel_step * scale
        columns = []
        for i in range(self.nvars):
            acc = None
            for offset, weight in zip(_STENCIL_OFFSETS, _STENCIL_WEIGHTS):
                shifted = pts.copy()
                shifted[:, i] += offset * h
                term = weight * self._values(shifted)
                acc = term if acc is None else acc + term
            # holomorphic: the real-direction derivative is d/dz
            columns.append(acc / h[:, None])
        return np.stack(columns, axis=-1)

    def check_derivatives(self, probes: np.ndarray, rel_step: float = 1e-3) -> float:
        """Max relative gap between the Jacobian and central differences at probe points."""
        probes = np.atleast_2d(np.asarray(probes, dtype=complex))
        reference = LiftEvaluator(lambda z: self.values(z), nvars=self.nvars, rel_step=rel_step)
        jac = self.values_jacobian_unscaled(probes)
        fd = reference._fd_jacobian(probes)
        return float(np.max(np.abs(jac - fd) / (1.0 + np.abs(fd))))

    def values_jacobian_unscaled(self, points: np.ndarray) -> np.ndarray:
        if self.is_polynomial:
            return self.poly.jacobian(points)
        return self._fd_jacobian(np.atleast_2d(np.asarray(points, dtype=complex)))

    def __repr__(self) -> str:
        kind = f"polynomial {self.poly}" if self.is_polynomial else "black-box"
        return f"LiftEvaluator({kind}, n={self.nvars})"


class Potential:
    """Interface: a plurisubharmonic function with batch derivatives."""

    nvars: int

    def gradient(self, points: np.ndarray) -> np.ndarray:
        """``du/dz_j``, shape ``(m, n)``."""
        raise NotImplementedError

    def hessian(self, points: np.ndarray) -> np.ndarray:
        """``d^2 u / dz_j dzbar_k``, shape ``(m, n, n)``, Hermitian."""
        raise NotImplementedError

    def derivatives(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return self.gradient(points), self.hessian(points)

    def __add__(self, other: "Potential") -> "SumPotential":
        return SumPotential([self, other])


class LogNormPotential(Potential):
    """``u = log ||F||^2`` for a lift ``F``."""

    def __init__(self, lift: Union[LiftEvaluator, PolyTuple]):
        self.lift = lift if isinstance(lift, LiftEvaluator) else LiftEvaluator(lift)
        self.nvars = self.lift.nvars

    def derivatives(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        values, jac = self.lift.evaluate(points)
        norm2 = np.sum(np.abs(values) ** 2, axis=1)
        safe = np.where(norm2 > 0, norm2, 1.0)
        unit = values / np.sqrt(safe)[:, None]
        # project the Jacobian off F so the Gram matrix below is PSD by construction
        overlap = np.einsum('ma,mai->mi', unit.conj(), jac)
        projected = jac - unit[:, :, None] * overlap[:, None, :]
        hess = np.einsum('maj,mak->mjk', projected, projected.conj()) / safe[:, None, None]
        grad = np.einsum('ma,mai->mi', values.conj(), jac) / safe[:, None]
        dead = norm2 <= 0
        if np.any(dead):
            hess[dead] = 0.0
            grad[dead] = 0.0
        return grad, hess

    def gradient(self, points: np.ndarray) -> np.ndarray:
        return self.derivatives(points)[0]

    def hessian(self, points: np.ndarray) -> np.ndarray:
        return self.derivatives(points)[1]


class SquaredNormPotential(Potential):
    """
    ``u = ||G||^2`` for a holomorphic map ``G``; the Euclidean ``||z - c||^2`` by default.
    """

    def __init__(self, nvars: int, lift: Optional[Union[LiftEvaluator, PolyTuple]] = None,
                 center: Optional[Sequence[complex]] = None):
        self.nvars = nvars
        self.lift = None if lift is None else (lift if isinstance(lift, LiftEvaluator) else LiftEvaluator(lift))
        self.center = np.zeros(nvars, dtype=complex) if center is None else np.asarray(center, dtype=complex)

    def derivatives(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        m = pts.shape[0]
        if self.lift is None:
            grad = (pts - self.center).conj()
            hess = np.broadcast_to(np.eye(self.nvars, dtype=complex), (m, self.nvars, self.nvars)).copy()
            return grad, hess
        values = self.lift.values(pts)
        jac = self.lift.values_jacobian_unscaled(pts)
        grad = np.einsum('ma,mai->mi', values.conj(), jac)
        hess = np.einsum('maj,mak->mjk', jac, jac.conj())
        return grad, hess

    def gradient(self, points: np.ndarray) -> np.ndarray:
        return self.derivatives(points)[0]

    def hessian(self, points: np.ndarray) -> np.ndarray:
        return self.derivatives(points)[1]


class SumPotential(Potential):
    """Sum of potentials on the same space."""

    def __init__(self, parts: Sequence[Potential]):
        flat = []
        for p in parts:
            flat.extend(p.parts if isinstance(p, SumPotential) else [p])
        if len({p.nvars for p in flat}) != 1:
            raise ValueError("summed potentials must share the variable count")
        self.parts = flat
        self.nvars = flat[0].nvars

    def derivatives(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        grad, hess = self.parts[0].derivatives(points)
        for p in self.parts[1:]:
            g, h = p.derivatives(points)
            grad = grad + g
            hess = hess + h
        return grad, hess

    def gradient(self, points: np.ndarray) -> np.ndarray:
        return self.derivatives(points)[0]

    def hessian(self, points: np.ndarray) -> np.ndarray:
        return self.derivatives(points)[1]


class RashkovskiiPotential(Potential):
    """``u = log(|z1|^2 + |z1 - eps|^2 + |z2|^2 + |z3|^k)`` on C^3."""

    nvars = 3

    def __init__(self, k: int, eps: float):
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        if eps < 0:
            raise ValueError(f"eps must be nonnegative, got {eps}")
        self.k = k
        self.eps = eps

    def derivatives(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        z = np.atleast_2d(np.asarray(points, dtype=complex))
        z1, z2, z3 = z[:, 0], z[:, 1], z[:, 2]
        a3 = np.abs(z3)
        half = self.k / 2.0
        s = np.abs(z1) ** 2 + np.abs(z1 - self.eps) ** 2 + np.abs(z2) ** 2 + a3 ** self.k
        # first derivatives dS/dz_j
        with np.errstate(divide="ignore", invalid="ignore"):
            pow_km2 = a3 ** (self.k - 2)
        d1 = np.conj(z1) + np.conj(z1 - self.eps)
        d2 = np.conj(z2)
        d3 = half * pow_km2 * np.conj(z3)
        grad_s = np.stack([d1, d2, d3], axis=1)
        second = np.zeros((z.shape[0], 3, 3), dtype=complex)
        second[:, 0, 0] = 2.0
        second[:, 1, 1] = 1.0
        second[:, 2, 2] = half * half * pow_km2
        safe = np.where(s > 0, s, 1.0)
        hess = second / safe[:, None, None] - np.einsum('mj,mk->mjk', grad_s, grad_s.conj()) / (safe ** 2)[:, None, None]
        hess = np.nan_to_num(hess, nan=0.0, posinf=0.0, neginf=0.0)
        grad = np.nan_to_num(grad_s / safe[:, None], nan=0.0, posinf=0.0, neginf=0.0)
        return grad, hess

    def gradient(self, points: np.ndarray) -> np.ndarray:
        return self.derivatives(points)[0]

    def hessian(self, points: np.ndarray) -> np.ndarray:
        return self.derivatives(points)[1]


def as_lift(obj, nvars: Optional[int] = None, chart: int = 0) -> LiftEvaluator:
    """
    Lift evaluator for a tuple, a representation or a callable.

    Projective representations are read in the affine chart ``chart`` of the
    source, so ``[z0 : z1]`` becomes ``z -> F(1, z)`` for ``chart=0``.
    """
    if isinstance(obj, LiftEvaluator):
        return obj
    if isinstance(obj, HomogRep):
        return LiftEvaluator(obj.tuple if obj.local else dehomogenize(obj, chart))
    if isinstance(obj, PolyTuple):
        return LiftEvaluator(obj)
    if callable(obj):
        return LiftEvaluator(obj, nvars=nvars)
    raise TypeError(f"cannot build a lift from {type(obj).__name__}")


def as_potential(obj) -> Potential:
    """Accept a potential, a lift, a representation or a polynomial tuple (meaning ``log ||F||^2``)."""
    if isinstance(obj, Potential):
        return obj
    if isinstance(obj, (LiftEvaluator, PolyTuple, HomogRep)):
        return LogNormPotential(as_lift(obj))
    raise TypeError(f"cannot build a potential from {type(obj).__name__}")


__all__ = [
    'LiftEvaluator',
    'Potential',
    'LogNormPotential',
    'SquaredNormPotential',
    'SumPotential',
    'RashkovskiiPotential',
    'as_lift',
    'as_potential',
]
