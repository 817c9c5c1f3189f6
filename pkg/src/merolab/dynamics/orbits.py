"""
Orbits of rational self-maps of projective space.

Two trackers are provided:

- :func:`log_orbit` evaluates closed-form iterates of a monomial map on the
  log-moduli of a point. The exponent matrices are exact big integers and the
  log-moduli are rounded to exact decimals, so ties such as ``|z0| = |z1|``
  are detected exactly.
- :func:`numeric_orbit` steps any map pointwise, keeping the state as complex
  logarithms of the coordinates and renormalizing after every step, so
  coordinates decaying like ``2^-(2^k)`` never underflow to an exact zero.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np

from ..config import MeroLabConfig, get_config
from ..poly import CompiledTuple
from ..projective import HomogRep, MonomialMap, hits_indeterminacy

logger = logging.getLogger(__name__)

CONVERGED = "converged"
JULIA = "julia"
INDETERMINATE = "indeterminate"
UNDECIDED = "undecided"

# names of the coordinate points of P^2
POINT_NAMES = {0: "p", 1: "r", 2: "q"}

_LOG_DIGITS = 12
_LOG_ZERO = -1e300
_CANCELLATION = 1e-12
_PHASE_TOL = 1e-9


class OrbitIndeterminacyError(Exception):
    """Raised when an orbit step lands on a common zero of all components."""

    def __init__(self, step: int, message: str):
        super().__init__(message)
        self.step = step


@dataclass
class Dominance:
    """
    Which component of a monomial iterate wins, and by how much.

    Attributes:
        component: Leading homogeneous coordinate
        runner_up: Second coordinate (``None`` when the others vanish identically)
        gap: Log-modulus gap between the two at the last iterate
        margin: ``gap / growth^k``, the normalized distance to the tie
        growth: Spectral radius of the affine exponent matrix
        tied: Coordinates whose gap to the leader does not grow with k
    """

    component: int
    runner_up: Optional[int]
    gap: float
    margin: float
    growth: float
    tied: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'component': self.component,
            'runner_up': self.runner_up,
            'gap': _finite(self.gap),
            'margin': _finite(self.margin),
            'growth': self.growth,
            'tied': list(self.tied),
        }


@dataclass
class OrbitRecord:
    """
    An orbit with its limit candidate.

    Attributes:
        point: Homogeneous starting point
        method: ``log-orbit`` or ``numeric-orbit``
        ks: Iterate indices of the stored coordinates
        coordinates: Normalized homogeneous coordinates per stored iterate;
            the largest has modulus 1
        status: ``converged``, ``julia``, ``indeterminate`` or ``undecided``
        limit: ``p``, ``r``, ``q`` (coordinate points), ``none`` (another
            limit point) or ``None`` (no limit)
        limit_point: Normalized limit point
        tail_diameter: Fubini-Study diameter of the tail window
        dominance: Dominance certificate of log orbits
        indeterminacy_step: First step whose image is an indeterminacy point
    """

    point: List[complex]
    method: str
    ks: List[int] = field(default_factory=list)
    coordinates: List[List[complex]] = field(default_factory=list)
    status: str = UNDECIDED
    limit: Optional[str] = None
    limit_point: Optional[List[complex]] = None
    tail_diameter: float = math.inf
    dominance: Optional[Dominance] = None
    indeterminacy_step: Optional[int] = None
    message: str = ""

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED

    def to_dict(self, with_coordinates: bool = False) -> Dict:
        out = {
            'point': _pairs(self.point),
            'method': self.method,
            'ks': list(self.ks),
            'status': self.status,
            'limit': self.limit,
            'limit_point': _pairs(self.limit_point) if self.limit_point is not None else None,
            'tail_diameter': _finite(self.tail_diameter),
            'dominance': self.dominance.to_dict() if self.dominance else None,
            'indeterminacy_step': self.indeterminacy_step,
            'message': self.message,
        }
        if with_coordinates:
            out['coordinates'] = [_pairs(c) for c in self.coordinates]
        return out


def _finite(x: float) -> Optional[float]:
    return float(x) if math.isfinite(x) else None


def _pairs(values: Sequence[complex]) -> List[List[float]]:
    return [[float(complex(z).real), float(complex(z).imag)] for z in values]


def normalize_point(values: Sequence[complex]) -> np.ndarray:
    """Scale so the largest coordinate is exactly 1."""
    v = np.asarray(values, dtype=complex)
    top = int(np.argmax(np.abs(v)))
    if v[top] == 0:
        raise ValueError("the zero vector is not a projective point")
    out = v / v[top]
    out[top] = 1.0
    return out


def fs_diameter(rows: Sequence[Sequence[complex]]) -> float:
    """Largest pairwise Fubini-Study sine distance."""
    if len(rows) < 2:
        return 0.0
    a = np.asarray(rows, dtype=complex)
    a = a / np.linalg.norm(a, axis=1, keepdims=True)
    overlap = np.abs(a @ a.conj().T)
    return float(np.sqrt(np.clip(1.0 - overlap ** 2, 0.0, 1.0)).max())


def point_name(point: Sequence[complex], tol: float) -> str:
    """Name of the coordinate point within ``tol``, else ``none``."""
    v = np.asarray(point, dtype=complex)
    v = v / np.linalg.norm(v)
    for i, name in POINT_NAMES.items():
        if i < len(v) and math.sqrt(max(0.0, 1.0 - abs(v[i]) ** 2)) < tol:
            return name if len(v) == 3 else f"e{i}"
    return "none"


def _exact_log(value: complex) -> Optional[Fraction]:
    modulus = abs(complex(value))
    if modulus == 0:
        return None
    return Fraction(f"{math.log(modulus):.{_LOG_DIGITS}f}")


def _growth(m: MonomialMap) -> float:
    eigs = np.linalg.eigvals(np.array([[float(x) for x in row] for row in m.matrix]))
    return max(1.0, float(np.max(np.abs(eigs))))


@lru_cache(maxsize=512)
def _power(m: MonomialMap, k: int):
    """Exponent data of ``f^k`` with the common monomial factor removed."""
    a, b = m.homogeneous_power(k)
    content = [min(int(a[i, j]) for i in range(a.shape[0])) for j in range(a.shape[1])]
    a = a.copy()
    for j, c in enumerate(content):
        if c:
            a[:, j] = a[:, j] - c
    return a, b


def _forms(m: MonomialMap, k: int, x: List[Optional[Fraction]], logc: List[Fraction]):
    """Exact log-moduli of the components of ``f^k`` at ``x`` (``None``: identically zero)."""
    a, b = _power(m, k)
    out: List[Optional[Fraction]] = []
    for i in range(a.shape[0]):
        if any(x[j] is None and int(a[i, j]) > 0 for j in range(a.shape[1])):
            out.append(None)
            continue
        total = sum((int(a[i, j]) * x[j] for j in range(a.shape[1]) if x[j] is not None), Fraction(0))
        total += sum((int(b[i, l]) * logc[l] for l in range(b.shape[1])), Fraction(0))
        out.append(total)
    return out, a, b


def _phases(a, b, args: Sequence[float], cargs: Sequence[float]) -> np.ndarray:
    rows = []
    for i in range(a.shape[0]):
        phase = sum(float(int(a[i, j])) * args[j] for j in range(a.shape[1]))
        phase += sum(float(int(b[i, l])) * cargs[l] for l in range(b.shape[1]))
        rows.append(math.remainder(phase, 2 * math.pi))
    return np.array(rows)


def _coordinates(levels: List[Optional[Fraction]], phases: np.ndarray, top: int) -> List[complex]:
    coords = []
    for i, level in enumerate(levels):
        if level is None:
            coords.append(0j)
            continue
        modulus = math.exp(max(float(level - levels[top]), -745.0))
        coords.append(modulus * complex(math.cos(phases[i]), math.sin(phases[i])))
    return list(normalize_point(coords))


def _differences(forms: List[Optional[Fraction]], top: int) -> Dict[int, Fraction]:
    if forms[top] is None:
        return {}
    return {i: forms[top] - f for i, f in enumerate(forms) if f is not None and i != top}


def _stationary_pairs(m: MonomialMap, k: int, logc: Sequence[Fraction], cargs: Sequence[float]) -> np.ndarray:
    """
    ``S[t, i]``: the ratio ``z_i / z_t`` of ``f^k`` equals that of ``f^(k-1)``.

    The point exponents must drift by nothing, and the coefficient exponents by
    a combination whose log-modulus is exactly zero and whose phase is a
    multiple of 2 pi. The identity has coefficient drift ``e_i - e_t`` with unit
    coefficients, so every pair is stationary.
    """
    a_k, b_k = _power(m, k)
    a_p, b_p = _power(m, k - 1)
    n = a_k.shape[0]
    out = np.identity(n, dtype=bool)
    for t in range(n):
        for i in range(n):
            if i == t:
                continue
            if any(int(a_k[i, j]) - int(a_k[t, j]) != int(a_p[i, j]) - int(a_p[t, j]) for j in range(a_k.shape[1])):
                continue
            drift = [int(b_k[i, l]) - int(b_k[t, l]) - int(b_p[i, l]) + int(b_p[t, l]) for l in range(b_k.shape[1])]
            if sum((d * logc[l] for l, d in enumerate(drift) if d), Fraction(0)) != 0:
                continue
            phase = sum(d * cargs[l] for l, d in enumerate(drift) if d)
            out[t, i] = abs(math.remainder(phase, 2 * math.pi)) < _PHASE_TOL
    return out


def log_orbit(
    m: MonomialMap,
    point: Sequence[complex],
    k: Optional[int] = None,
    config: Optional[MeroLabConfig] = None,
) -> OrbitRecord:
    """
    Limit behavior of a monomial map's iterates at a point, from exact log-moduli.

    The component whose log-modulus leads at iterate ``k`` is the limit
    candidate when its gap to every other component keeps growing. Coordinates
    whose gap stays bounded are tied with the leader: if their ratio to the
    leader no longer changes from one iterate to the next (see
    :func:`_stationary_pairs`) the orbit is stationary, otherwise the point
    lies on a Julia cone. A growing gap whose normalized size is below
    ``julia_margin`` leaves the point Indeterminate.

    Args:
        m: Monomial self-map
        point: Homogeneous coordinates of the point
        k: Iterate examined (default ``config.orbit_kmax``)
        config: Margins and tail window

    Returns:
        OrbitRecord with a dominance certificate
    """
    config = config or get_config()
    k = k or config.orbit_kmax
    if len(point) != m.base.nvars:
        raise ValueError(f"point has {len(point)} coordinates, the map needs {m.base.nvars}")
    if k < 3:
        raise ValueError(f"log orbits need k >= 3, got {k}")
    z = [complex(v) for v in point]
    x = [_exact_log(v) for v in z]
    if all(v is None for v in x):
        raise ValueError("the zero vector is not a projective point")
    coeffs = [complex(c) for c in m.homogeneous_coefficients()]
    logc = [_exact_log(c) for c in coeffs]
    args = [math.atan2(v.imag, v.real) for v in z]
    cargs = [math.atan2(c.imag, c.real) for c in coeffs]
    record = OrbitRecord(z, "log-orbit")

    zeros = frozenset(j for j, v in enumerate(x) if v is None)
    record.indeterminacy_step = hits_indeterminacy(m, zeros) if zeros else None

    window = list(range(max(1, k - config.tail_window + 1), k + 1))
    steps = sorted(set(window) | {k - 2, k - 1})
    forms = {}
    for step in steps:
        levels, a, b = _forms(m, step, x, logc)
        forms[step] = levels
        if step in window and any(level is not None for level in levels):
            top = max((i for i, level in enumerate(levels) if level is not None), key=lambda i: levels[i])
            record.ks.append(step)
            record.coordinates.append(_coordinates(levels, _phases(a, b, args, cargs), top))

    last = forms[k]
    live = [i for i, level in enumerate(last) if level is not None]
    if not live:
        record.status = INDETERMINATE
        record.message = f"every component of f^{k} vanishes at the point"
        return record
    record.tail_diameter = fs_diameter(record.coordinates)

    top = max(live, key=lambda i: last[i])
    growth = _growth(m)
    gaps = _differences(last, top)
    earlier = [_differences(forms[k - 1], top), _differences(forms[k - 2], top)]
    tied = [i for i, gap in gaps.items() if all(gap <= prev.get(i, gap) for prev in earlier)]
    runner_up = min(gaps, key=gaps.get) if gaps else None
    gap = float(gaps[runner_up]) if runner_up is not None else math.inf
    margin = gap / growth ** k if runner_up is not None else math.inf
    record.dominance = Dominance(top, runner_up, gap, margin, growth, sorted(tied))

    if tied:
        stationary = _stationary_pairs(m, k, logc, cargs)
        if not all(stationary[top, i] for i in tied):
            record.status = JULIA
            record.message = f"coordinates {sorted([top] + tied)} stay tied while their ratios keep moving"
            return record
        # stationary ties: a finite limit point whose growing gaps still need a margin
        growing = [gaps[i] for i in gaps if i not in tied]
        margin = float(min(growing)) / growth ** k if growing else math.inf
        record.dominance.margin = margin
    if margin < config.julia_margin:
        record.status = INDETERMINATE
        record.message = f"dominance margin {margin:.3g} below {config.julia_margin}"
        return record

    record.status = CONVERGED
    record.limit_point = list(record.coordinates[-1])
    if tied:
        record.limit = point_name(record.limit_point, config.fs_tol)
    else:
        record.limit = POINT_NAMES.get(top, f"e{top}") if len(last) == 3 else f"e{top}"
        basis = [0j] * len(last)
        basis[top] = 1.0 + 0j
        record.limit_point = basis
    return record


@dataclass(frozen=True, eq=False)
class LogOrbitPlan:
    """
    Exponent data of the iterates a log orbit examines, shared by many points.

    Per examined step ``s`` in ``k-2, k-1, k`` the plan keeps the pairwise
    exponent differences ``A_s[t] - A_s[i]`` and the exact log-modulus of the
    coefficient ratios, both as floats. Build it once per map, then label any
    number of points with :func:`log_orbit_batch`.
    """

    m: MonomialMap
    k: int
    growth: float
    positive: Tuple[np.ndarray, ...]
    exponents: Tuple[np.ndarray, ...]
    point_diffs: Tuple[np.ndarray, ...]
    coefficient_levels: Tuple[np.ndarray, ...]
    coefficient_diffs: Tuple[np.ndarray, ...]
    phase_diffs: np.ndarray
    stationary: np.ndarray

    @property
    def size(self) -> int:
        return self.m.base.nvars

    @classmethod
    def build(cls, m: MonomialMap, k: int) -> "LogOrbitPlan":
        if k < 3:
            raise ValueError(f"log orbits need k >= 3, got {k}")
        coeffs = [complex(c) for c in m.homogeneous_coefficients()]
        logc = [_exact_log(c) for c in coeffs]
        cargs = [math.atan2(c.imag, c.real) for c in coeffs]
        n = m.base.nvars
        positive, exponents, point_diffs, levels, level_diffs = [], [], [], [], []
        for s in (k - 2, k - 1, k):
            a, b = _power(m, s)
            rows = [[int(a[i, j]) for j in range(n)] for i in range(n)]
            exact = [sum((int(b[i, l]) * logc[l] for l in range(n)), Fraction(0)) for i in range(n)]
            positive.append(np.array([[e > 0 for e in row] for row in rows]))
            exponents.append(np.array(rows, dtype=float))
            point_diffs.append(np.array(
                [[[float(rows[t][j] - rows[i][j]) for j in range(n)] for i in range(n)] for t in range(n)]
            ))
            levels.append(np.array([float(v) for v in exact]))
            level_diffs.append(np.array([[float(exact[t] - exact[i]) for i in range(n)] for t in range(n)]))
        _, b_k = _power(m, k)
        phase_diffs = np.array([
            [math.remainder(sum((int(b_k[i, l]) - int(b_k[t, l])) * cargs[l] for l in range(n) if cargs[l]), 2 * math.pi)
             for i in range(n)]
            for t in range(n)
        ])
        return cls(
            m=m,
            k=k,
            growth=_growth(m),
            positive=tuple(positive),
            exponents=tuple(exponents),
            point_diffs=tuple(point_diffs),
            coefficient_levels=tuple(levels),
            coefficient_diffs=tuple(level_diffs),
            phase_diffs=phase_diffs,
            stationary=_stationary_pairs(m, k, logc, cargs),
        )


def log_orbit_batch(
    plan: LogOrbitPlan,
    points: Union[np.ndarray, Sequence[Sequence[complex]]],
    config: Optional[MeroLabConfig] = None,
) -> List[OrbitRecord]:
    """
    :func:`log_orbit` for many points at once, in floating point.

    Log-moduli are rounded to the same decimals as the exact tracker and the
    pairwise gaps are summed product by product, so points with equal moduli
    tie exactly here too. Records carry the status, limit and dominance but no
    tail coordinates.

    Args:
        plan: Exponent data of the map at ``plan.k``
        points: Homogeneous points, one per row
        config: Margins

    Returns:
        One OrbitRecord per point
    """
    config = config or get_config()
    z = np.atleast_2d(np.asarray(points, dtype=complex))
    n, k = plan.size, plan.k
    if z.shape[1] != n:
        raise ValueError(f"points have {z.shape[1]} coordinates, the map needs {n}")
    zero = z == 0
    if np.any(zero.all(axis=1)):
        raise ValueError("the zero vector is not a projective point")
    with np.errstate(divide="ignore"):
        x = np.where(zero, 0.0, np.round(np.log(np.where(zero, 1.0, np.abs(z))), _LOG_DIGITS))
    args = np.angle(z)
    count = len(z)
    rows = np.arange(count)

    gaps, live = [], []
    for s in range(3):
        live.append(~(zero[:, None, :] & plan.positive[s][None, :, :]).any(axis=2))
        # product by product, so that equal log-moduli cancel exactly
        gaps.append((plan.point_diffs[s][None] * x[:, None, None, :]).sum(axis=3) + plan.coefficient_diffs[s][None])
    levels = (plan.exponents[2][None] * x[:, None, :]).sum(axis=2) + plan.coefficient_levels[2][None]
    levels = np.where(live[2], levels, -np.inf)
    leads = live[2] & ((gaps[2] >= 0) | ~live[2][:, None, :]).all(axis=2)
    top = np.where(leads.any(axis=1), leads.argmax(axis=1), levels.argmax(axis=1))

    others = live[2].copy()
    others[rows, top] = False
    gap_k = np.where(others, gaps[2][rows, top], np.inf)
    tied = others.copy()
    for s in (0, 1):
        valid = live[s] & live[s][rows, top][:, None]
        earlier = np.where(valid, gaps[s][rows, top], np.inf)
        tied &= gap_k <= earlier
    growing = others & ~tied
    runner_gap = gap_k.min(axis=1)
    runner_up = gap_k.argmin(axis=1)
    growing_gap = np.where(growing, gap_k, np.inf).min(axis=1)
    has_ties = tied.any(axis=1)
    scale = plan.growth ** k
    margin = np.where(has_ties, growing_gap, runner_gap) / scale
    julia = (tied & ~plan.stationary[top]).any(axis=1)

    with np.errstate(under="ignore", over="ignore", invalid="ignore"):
        turn = (plan.point_diffs[2][top] * args[:, None, :]).sum(axis=2)
        ratios = np.exp(-np.where(live[2], gaps[2][rows, top], np.inf)) * np.exp(1j * (plan.phase_diffs[top] - turn))
    ratios = np.where(live[2], ratios, 0j)

    patterns: Dict[frozenset, Optional[int]] = {}
    records = []
    for p in range(count):
        record = OrbitRecord(list(z[p]), "log-orbit", ks=[k])
        pattern = frozenset(int(j) for j in np.flatnonzero(zero[p]))
        if pattern:
            if pattern not in patterns:
                patterns[pattern] = hits_indeterminacy(plan.m, pattern)
            record.indeterminacy_step = patterns[pattern]
        records.append(record)
        if not live[2][p].any():
            record.status = INDETERMINATE
            record.message = f"every component of f^{k} vanishes at the point"
            continue
        t = int(top[p])
        runner = int(runner_up[p]) if others[p].any() else None
        record.dominance = Dominance(
            t, runner, float(runner_gap[p]), float(margin[p]), plan.growth,
            [int(i) for i in np.flatnonzero(tied[p])],
        )
        if julia[p]:
            record.status = JULIA
            record.message = f"coordinates {sorted([t] + record.dominance.tied)} stay tied while their ratios keep moving"
            continue
        if margin[p] < config.julia_margin:
            record.status = INDETERMINATE
            record.message = f"dominance margin {margin[p]:.3g} below {config.julia_margin}"
            continue
        record.status = CONVERGED
        if has_ties[p]:
            record.limit_point = list(normalize_point(ratios[p]))
            record.limit = point_name(record.limit_point, config.fs_tol)
        else:
            basis = [0j] * n
            basis[t] = 1.0 + 0j
            record.limit_point = basis
            record.limit = POINT_NAMES.get(t, f"e{t}") if n == 3 else f"e{t}"
        record.coordinates = [record.limit_point]
    return records


class _LogStepper:
    """One step of a map on complex-log coordinates."""

    def __init__(self, f: HomogRep):
        self.compiled = CompiledTuple(f.tuple)
        c = self.compiled.coefficients
        self.log_coefficients = np.log(np.abs(c)) + 1j * np.angle(c)
        self.groups = [np.where(self.compiled.owner == j)[0] for j in range(self.compiled.ncomponents)]

    def __call__(self, w: np.ndarray, step: int) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore"):
            terms = self.compiled.exponents @ w.real + self.log_coefficients.real
            angles = self.compiled.exponents @ w.imag + self.log_coefficients.imag
        out = np.full(self.compiled.ncomponents, _LOG_ZERO, dtype=complex)
        for j, idx in enumerate(self.groups):
            if len(idx) == 0:
                continue
            levels = terms[idx]
            scale = float(np.max(levels))
            if not math.isfinite(scale) or scale < _LOG_ZERO / 2:
                continue
            with np.errstate(under="ignore"):
                value = np.sum(np.exp(levels - scale) * np.exp(1j * angles[idx]))
            largest = float(np.max(np.exp(levels - scale)))
            if abs(value) < _CANCELLATION * largest:
                continue
            out[j] = scale + math.log(abs(value)) + 1j * math.atan2(value.imag, value.real)
        if np.all(out.real <= _LOG_ZERO / 2):
            raise OrbitIndeterminacyError(step, f"all components vanish at step {step}")
        top = float(np.max(out.real))
        out = np.where(out.real > _LOG_ZERO / 2, out - top, _LOG_ZERO)
        return out.real + 1j * np.remainder(out.imag + np.pi, 2 * np.pi) - 1j * np.pi


def _from_log(w: np.ndarray) -> List[complex]:
    values = np.where(w.real > _LOG_ZERO / 2, np.exp(np.maximum(w.real, -745.0)) * np.exp(1j * w.imag), 0j)
    return list(normalize_point(values))


def numeric_orbit(
    f: HomogRep,
    point: Sequence[complex],
    k_max: Optional[int] = None,
    config: Optional[MeroLabConfig] = None,
) -> OrbitRecord:
    """
    Iterate a self-map pointwise with renormalization and look for a limit.

    The orbit converges when the last ``tail_window`` points have Fubini-Study
    diameter below ``fs_tol``.

    Args:
        f: Rational self-map of P^n
        point: Homogeneous starting point
        k_max: Number of steps (default ``config.orbit_kmax``)
        config: Tolerances

    Returns:
        OrbitRecord; an indeterminacy hit is recorded with its step
    """
    config = config or get_config()
    k_max = k_max or config.orbit_kmax
    if not f.is_self_map:
        raise ValueError(f"{f} is not a self-map of projective space")
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, the map needs {f.nvars}")
    start = np.asarray([complex(v) for v in point])
    if not np.any(start != 0):
        raise ValueError("the zero vector is not a projective point")
    record = OrbitRecord(list(start), "numeric-orbit")
    step = _LogStepper(f)
    with np.errstate(divide="ignore"):
        w = np.where(start != 0, np.log(np.abs(start)) + 1j * np.angle(start), _LOG_ZERO)
    for k in range(1, k_max + 1):
        try:
            w = step(w, k)
        except OrbitIndeterminacyError as exc:
            # f^(step-1) of the point is where every component vanished
            record.indeterminacy_step = exc.step - 1
            record.status = INDETERMINATE
            record.message = str(exc)
            logger.debug(f"orbit of {list(start)} meets the indeterminacy set at step {exc.step - 1}")
            return record
        record.ks.append(k)
        record.coordinates.append(_from_log(w))

    tail = record.coordinates[-config.tail_window:]
    record.tail_diameter = fs_diameter(tail)
    if record.tail_diameter < config.fs_tol:
        record.status = CONVERGED
        record.limit_point = list(tail[-1])
        record.limit = point_name(tail[-1], config.fs_tol)
    else:
        record.message = f"tail diameter {record.tail_diameter:.3g} above {config.fs_tol}"
    return record


__all__ = [
    'OrbitIndeterminacyError',
    'Dominance',
    'OrbitRecord',
    'LogOrbitPlan',
    'log_orbit',
    'log_orbit_batch',
    'numeric_orbit',
    'normalize_point',
    'fs_diameter',
    'point_name',
    'POINT_NAMES',
    'CONVERGED',
    'JULIA',
    'INDETERMINATE',
    'UNDECIDED',
]
