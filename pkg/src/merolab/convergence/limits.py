"""
Convergence of representations and the limit candidate.

Polynomial representations are compared through their coefficient vectors.
Each coefficient of ``z^e`` is weighted by the sup of ``|z^e|`` over the
domain, so a monomial that escapes to ever higher degree on a domain of
radius below one counts as vanishing. Consecutive vectors are compared with
the Fubini-Study sine distance, which ignores the scalar normalization of a
representation. When the tail is not already Cauchy, every coordinate of the
normalized vectors is extrapolated (geometric or algebraic in 1/k, whichever
is stable) and the result is snapped to exact rationals.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from ..config import MeroLabConfig, get_config
from ..poly import GaussianRational, PolyTuple, SparsePoly, evaluate_scaled, tuple_content
from ..quadrature import PolydiskSpec
from .family import Domain, MapFamily

logger = logging.getLogger(__name__)

Key = Tuple[int, Tuple[int, ...]]

# coordinates whose extrapolations from two windows differ by more than this are unstable
_STABILITY = 1e-6
_SNAP_DENOMINATOR = 10_000
_SNAP_TOL = 1e-7


@dataclass
class RepLimit:
    """
    Outcome of the rep-convergence test.

    Attributes:
        candidate: Limit tuple, or ``None`` when the sequence is not Cauchy
        series: Distance between consecutive normalized representations
        ks: Indices of the compared members
        chart: Target chart used (``None`` for coefficient vectors)
        method: ``exact``, ``extrapolated``, ``chart`` or ``none``
        model: Extrapolation models used per coordinate
        tail_distances: Distance of the tail members to the candidate
        message: Why no candidate was produced
    """

    candidate: Optional[PolyTuple]
    series: List[float]
    ks: List[int]
    chart: Optional[int] = None
    method: str = "none"
    model: List[str] = field(default_factory=list)
    tail_distances: List[float] = field(default_factory=list)
    message: str = ""

    @property
    def converged(self) -> bool:
        return self.candidate is not None

    def to_dict(self) -> Dict:
        return {
            'candidate': str(self.candidate) if self.candidate is not None else None,
            'series': list(self.series),
            'ks': list(self.ks),
            'chart': self.chart,
            'method': self.method,
            'model': sorted(set(self.model)),
            'tail_distances': list(self.tail_distances),
            'message': self.message,
        }


@dataclass(frozen=True)
class LimitContent:
    """Common divisor of a limit tuple; trivial content means reduced."""

    content: SparsePoly
    reduced: bool

    def __str__(self) -> str:
        return "reduced" if self.reduced else f"common divisor {self.content}"


def reducedness_of_limit(t: PolyTuple) -> LimitContent:
    """GCD of the components of a limit tuple."""
    content = tuple_content(t)
    return LimitContent(content, content.is_constant)


def fs_distance(v: np.ndarray, w: np.ndarray) -> float:
    """Fubini-Study sine distance between two nonzero complex vectors."""
    nv, nw = np.linalg.norm(v), np.linalg.norm(w)
    if nv == 0 or nw == 0:
        return 1.0
    if np.array_equal(v, w):
        return 0.0
    v, w = v / nv, w / nw
    # norm of the part of w orthogonal to v
    return float(min(1.0, np.linalg.norm(w - np.vdot(v, w) * v)))


def domain_log_radii(dom: Domain) -> np.ndarray:
    """Log of the sup of ``|z_i|`` over the domain, per coordinate."""
    center = np.abs(np.asarray(dom.center, dtype=complex))
    radii = np.asarray(dom.radii if isinstance(dom, PolydiskSpec) else (dom.radius,) * dom.dimension)
    return np.log(center + radii)


def coefficient_keys(tuples: Sequence[PolyTuple]) -> List[Key]:
    keys = set()
    for t in tuples:
        for j, c in enumerate(t.components):
            keys.update((j, e) for e, _ in c.terms)
    return sorted(keys)


def _log_weights(keys: Sequence[Key], log_radii: np.ndarray) -> np.ndarray:
    return np.array([float(np.dot(e, log_radii)) for _, e in keys])


def weighted_vectors(tuples: Sequence[PolyTuple], keys: Sequence[Key], log_radii: np.ndarray) -> np.ndarray:
    """Unit-norm weighted coefficient vectors, one row per tuple."""
    index = {key: i for i, key in enumerate(keys)}
    log_w = _log_weights(keys, log_radii)
    rows = []
    for t in tuples:
        logs = np.full(len(keys), -np.inf)
        phases = np.zeros(len(keys), dtype=complex)
        for j, c in enumerate(t.components):
            for e, coeff in c.terms:
                i = index[(j, e)]
                logs[i] = coeff.log_abs() + log_w[i]
                phases[i] = np.exp(1j * coeff.phase())
        top = np.max(logs)
        row = np.where(np.isfinite(logs), np.exp(logs - top), 0.0) * phases
        rows.append(row / np.linalg.norm(row))
    return np.array(rows)


def _aitken(x: np.ndarray) -> Optional[complex]:
    d1, d2 = x[1] - x[0], x[2] - x[1]
    scale = max(float(np.max(np.abs(x))), 1e-300)
    if abs(d1) <= 1e-15 * scale and abs(d2) <= 1e-15 * scale:
        return complex(x[2])
    den = d2 - d1
    if abs(den) <= 1e-14 * scale:
        return None
    return complex(x[2] - d2 * d2 / den)


def _algebraic(x: np.ndarray, ks: Sequence[int]) -> Optional[complex]:
    """Limit of ``x_k = L + a/k + b/k^2`` through three points."""
    a = np.array([[1.0, 1.0 / k, 1.0 / k ** 2] for k in ks], dtype=complex)
    try:
        return complex(np.linalg.solve(a, x)[0])
    except np.linalg.LinAlgError:
        return None


def _extrapolate_column(x: np.ndarray, ks: Sequence[int], last_step: float, decaying: bool):
    scale = float(np.max(np.abs(x)))
    if scale <= 1e-14:
        return 0j, "zero"
    if float(np.max(np.abs(x - x[-1]))) <= 1e-12 * scale:
        return complex(x[-1]), "constant"
    estimates = []
    g1, g0 = _aitken(x[-3:]), _aitken(x[-4:-1])
    if g1 is not None and g0 is not None:
        estimates.append((abs(g1 - g0), g1, "geometric"))
    a1, a0 = _algebraic(x[-3:], ks[-3:]), _algebraic(x[-4:-1], ks[-4:-1])
    if a1 is not None and a0 is not None:
        estimates.append((abs(a1 - a0), a1, "algebraic"))
    if estimates:
        gap, value, model = min(estimates, key=lambda item: item[0])
        if gap <= _STABILITY * max(1.0, abs(value)):
            return value, model
    # a coordinate at the scale of the step size of a decaying sequence is dying out
    if decaying and abs(x[-1]) <= 4 * last_step:
        return 0j, "vanishing"
    return None, None


def _snap(value: float) -> Fraction:
    snapped = Fraction(value).limit_denominator(_SNAP_DENOMINATOR)
    if abs(float(snapped) - value) <= _SNAP_TOL * max(1.0, abs(value)):
        return snapped
    return Fraction(value)


def _snap_complex(value: complex) -> GaussianRational:
    re = _snap(value.real) if abs(value.real) > 1e-10 else Fraction(0)
    im = _snap(value.imag) if abs(value.imag) > 1e-10 else Fraction(0)
    return GaussianRational(re, im)


def _tuple_from_vector(
    limit: np.ndarray, keys: Sequence[Key], log_w: np.ndarray, pivot: int, ncomponents: int, nvars: int
) -> Optional[PolyTuple]:
    terms: List[Dict[Tuple[int, ...], GaussianRational]] = [dict() for _ in range(ncomponents)]
    for i, (j, e) in enumerate(keys):
        if abs(limit[i]) <= 1e-12:
            continue
        coeff = _snap_complex(complex(limit[i]) * math.exp(log_w[pivot] - log_w[i]))
        if not coeff.is_zero:
            terms[j][e] = coeff
    if not any(terms):
        return None
    return PolyTuple(SparsePoly(t, nvars) for t in terms).normalized()


def _coefficient_limit(tuples: List[PolyTuple], ks: List[int], dom: Domain, config: MeroLabConfig) -> RepLimit:
    log_radii = domain_log_radii(dom)
    keys = coefficient_keys(tuples)
    vectors = weighted_vectors(tuples, keys, log_radii)
    # identical members are at distance exactly zero
    series = [
        0.0 if tuples[i] == tuples[i + 1] else fs_distance(vectors[i], vectors[i + 1])
        for i in range(len(tuples) - 1)
    ]
    result = RepLimit(None, series, list(ks))
    if len(tuples) < 2:
        result.message = "at least two members are needed"
        return result

    window = min(config.tail_window, len(tuples))
    tail = series[-(window - 1):]
    if max(tail) <= config.rep_tol:
        result.candidate = tuples[-1].normalized()
        result.method = "exact"
        result.tail_distances = [fs_distance(v, vectors[-1]) for v in vectors[-window:]]
        return result

    if len(tuples) < 4:
        result.message = "too few members to extrapolate"
        return result
    window = max(window, 4)
    rows = vectors[-window:]
    pivot = int(np.argmax(np.abs(vectors[-1])))
    if np.any(np.abs(rows[:, pivot]) == 0):
        result.message = "the dominant coefficient is missing from part of the tail"
        return result
    normalized = rows / rows[:, pivot][:, None]
    steps = series[-(window - 1):]
    decaying = all(math.isfinite(s) for s in steps) and steps[-1] < 0.5 * steps[0]
    limit = np.zeros(len(keys), dtype=complex)
    models = []
    for i in range(len(keys)):
        value, model = _extrapolate_column(normalized[:, i], ks[-window:], steps[-1], decaying)
        if value is None:
            result.message = f"coefficient {keys[i]} has no stable limit"
            return result
        limit[i] = value
        models.append(model)
    limit[pivot] = 1.0
    log_w = _log_weights(keys, log_radii)
    candidate = _tuple_from_vector(limit, keys, log_w, pivot, len(tuples[-1]), tuples[-1].nvars)
    if candidate is None:
        result.message = "extrapolated coefficients all vanish"
        return result

    target = weighted_vectors([candidate], keys, log_radii)[0]
    distances = [fs_distance(v, target) for v in rows]
    shrinking = all(b <= a * (1 + 1e-9) + 1e-15 for a, b in zip(distances, distances[1:]))
    result.tail_distances = distances
    result.model = models
    if shrinking and distances[-1] <= config.limit_tol:
        result.candidate = candidate
        result.method = "extrapolated"
    else:
        result.message = f"tail does not approach the extrapolated limit (last distance {distances[-1]:.3g})"
    return result


def _grid(dom: Domain, per_axis: int = 3) -> np.ndarray:
    """Deterministic sample points inside a domain."""
    n = dom.dimension
    center = np.asarray(dom.center, dtype=complex)
    radii = np.asarray(dom.radii if isinstance(dom, PolydiskSpec) else (dom.radius / math.sqrt(n),) * n)
    axis = [0j] + [t * np.exp(2j * np.pi * m / per_axis) for t in (0.3, 0.6, 0.9) for m in range(per_axis)]
    mesh = np.stack(np.meshgrid(*([np.array(axis)] * n), indexing="ij"), axis=-1).reshape(-1, n)
    return center + mesh * radii


def _chart_limit(fam: MapFamily, tuples: List[PolyTuple], ks: List[int], dom: Domain, chart: int,
                 config: MeroLabConfig) -> RepLimit:
    points = _grid(dom)
    ratios = []
    for t in tuples:
        if not 0 <= chart < len(t):
            raise ValueError(f"target chart {chart} out of range for {len(t)} components")
        values, _, _ = evaluate_scaled(t, points)
        norms = np.linalg.norm(values, axis=1)
        den = values[:, chart]
        if np.any(np.abs(den) <= 1e-12 * norms):
            return RepLimit(None, [], list(ks), chart=chart,
                            message=f"component {chart} vanishes on the sampling grid")
        ratios.append(np.delete(values, chart, axis=1) / den[:, None])
    series = [float(np.max(np.abs(a - b))) for a, b in zip(ratios, ratios[1:])]
    result = RepLimit(None, series, list(ks), chart=chart)
    window = min(config.tail_window, len(tuples))
    if len(series) and max(series[-(window - 1):]) <= config.rep_tol:
        result.candidate = tuples[-1].normalized()
        result.method = "chart"
    else:
        result.message = f"chart {chart} ratios are not Cauchy"
    return result


def rep_limit(
    fam: MapFamily,
    chart: Optional[int] = None,
    ks: Optional[Sequence[int]] = None,
    dom: Optional[Domain] = None,
    config: Optional[MeroLabConfig] = None,
) -> RepLimit:
    """
    Test whether the reduced representations of a family converge.

    Args:
        fam: The family
        chart: Target chart; ``None`` tries the family's chart list in order
        ks: Indices to compare (default: the family's range)
        dom: Domain weighting the coefficients (default: the family's domain)
        config: Tolerances (default: the global configuration)

    Returns:
        RepLimit with the metric series and, when Cauchy, the limit candidate
    """
    config = config or get_config()
    dom = dom or fam.default_domain()
    ks = list(ks) if ks is not None else fam.ks()
    tuples = [fam.affine(k) for k in ks]
    modes = [chart] if chart is not None else list(fam.charts)
    first: Optional[RepLimit] = None
    for mode in modes:
        if mode is None:
            result = _coefficient_limit(tuples, ks, dom, config)
        else:
            result = _chart_limit(fam, tuples, ks, dom, mode, config)
        first = first or result
        if result.converged:
            logger.debug(f"{fam.name}: limit {result.candidate} ({result.method})")
            return result
        logger.debug(f"{fam.name}: no limit in mode {mode}: {result.message}")
    return first


__all__ = [
    'RepLimit',
    'LimitContent',
    'rep_limit',
    'reducedness_of_limit',
    'fs_distance',
    'weighted_vectors',
    'coefficient_keys',
    'domain_log_radii',
]
