"""
Domains, result records and errors shared by the quadrature backends.

Normalization used everywhere: ``dd^c = (i/2pi) d dbar``. Under it
``dd^c log|z|^2`` has unit mass at the origin, a projective line has
Fubini-Study area 1, and the order-p mixed mass
``(dd^c u)^p ^ (dd^c |z|^2)^(n-p)`` has density
``p! (n-p)! e_p(H) / pi^n`` against Lebesgue measure, where ``H`` is the
complex Hessian ``d^2 u / dz_j dzbar_k``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple
import logging
import math

import numpy as np
from tqdm import tqdm

logger = logging.getLogger(__name__)


class QuadratureError(Exception):
    """Raised when a numerical integral cannot be computed reliably."""
    pass


class ContourVanishingError(QuadratureError):
    """Raised when a function (nearly) vanishes on an integration contour."""
    pass


class ResidualTooLargeError(QuadratureError):
    """Raised when a winding integral is too far from an integer."""
    pass


class ZeroCountDisagreementError(QuadratureError):
    """Raised when two generic combinations give different common-zero counts."""
    pass


class DensitySignError(QuadratureError):
    """Raised when a Monge-Ampere density is negative beyond tolerance."""
    pass


class SampleBudgetError(QuadratureError):
    """Raised when a Monte Carlo budget cannot reach the requested accuracy."""
    pass


@dataclass(frozen=True)
class ContourSpec:
    """Circle ``|z - center| = radius`` in one complex variable."""

    center: complex = 0j
    radius: float = 1.0
    nodes: int = 256

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"contour radius must be positive, got {self.radius}")
        if self.nodes < 8:
            raise ValueError("a contour needs at least 8 nodes")

    def points(self, nodes: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
        """Equispaced nodes and their angles."""
        m = nodes or self.nodes
        theta = 2 * np.pi * np.arange(m) / m
        return self.center + self.radius * np.exp(1j * theta), theta


@dataclass(frozen=True)
class PolydiskSpec:
    """
    Polydisk ``prod_j {|z_j - c_j| < r_j}`` with a tensor Gauss-Legendre budget.

    Attributes:
        center: Center per complex variable
        radii: Radius per complex variable
        radial_panels: Geometrically graded radial panels per variable
        nodes_per_panel: Gauss-Legendre nodes per radial panel
        angular_nodes: Trapezoid nodes per angle
        grading: Ratio between consecutive radial breakpoints toward the center
        samples: Monte Carlo sample count when the dimension needs sampling
        eps: Tube radius excluded around the zero locus
    """

    center: Tuple[complex, ...]
    radii: Tuple[float, ...]
    radial_panels: int = 8
    nodes_per_panel: int = 8
    angular_nodes: int = 32
    grading: float = 0.25
    samples: int = 200_000
    eps: float = 0.0

    def __post_init__(self):
        if len(self.center) != len(self.radii):
            raise ValueError("center and radii must have the same length")
        if any(r <= 0 for r in self.radii):
            raise ValueError(f"radii must be positive, got {self.radii}")
        if self.eps < 0 or (self.eps and self.eps >= min(self.radii)):
            raise ValueError(f"exclusion radius {self.eps} must be in [0, min radius)")

    @property
    def dimension(self) -> int:
        return len(self.radii)

    @property
    def volume(self) -> float:
        return float(np.prod([math.pi * r * r for r in self.radii]))

    def contains(self, z: np.ndarray) -> np.ndarray:
        return np.all(np.abs(z - np.asarray(self.center)) < np.asarray(self.radii), axis=1)

    def sample_uniform(self, rng: np.random.Generator, m: int) -> np.ndarray:
        radii = np.asarray(self.radii)
        rho = radii * np.sqrt(rng.random((m, self.dimension)))
        theta = 2 * np.pi * rng.random((m, self.dimension))
        return np.asarray(self.center) + rho * np.exp(1j * theta)

    def with_eps(self, eps: float) -> "PolydiskSpec":
        return PolydiskSpec(**{**asdict(self), 'eps': eps})


@dataclass(frozen=True)
class BallSpec:
    """Euclidean ball ``||z - center|| < radius`` in C^n."""

    center: Tuple[complex, ...]
    radius: float
    samples: int = 200_000
    radial_nodes: int = 48
    angular_nodes: int = 32
    eps: float = 0.0

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"ball radius must be positive, got {self.radius}")
        if self.eps < 0 or (self.eps and self.eps >= self.radius):
            raise ValueError(f"exclusion radius {self.eps} must be in [0, radius)")

    @property
    def dimension(self) -> int:
        return len(self.center)

    @property
    def volume(self) -> float:
        n = self.dimension
        return math.pi ** n * self.radius ** (2 * n) / math.factorial(n)

    def contains(self, z: np.ndarray) -> np.ndarray:
        return np.linalg.norm(z - np.asarray(self.center), axis=1) < self.radius

    def sample_uniform(self, rng: np.random.Generator, m: int) -> np.ndarray:
        n = self.dimension
        g = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        rho = self.radius * rng.random(m) ** (1.0 / (2 * n))
        return np.asarray(self.center) + rho[:, None] * g

    def with_eps(self, eps: float) -> "BallSpec":
        return BallSpec(**{**asdict(self), 'eps': eps})


@dataclass(frozen=True)
class ZeroLocus:
    """
    Analytic set excluded by tube radius: isolated points and coordinate subspaces.

    A subspace entry ``(point, coordinates)`` is ``{z_i = point_i for i in coordinates}``.
    """

    points: Tuple[Tuple[complex, ...], ...] = ()
    subspaces: Tuple[Tuple[Tuple[complex, ...], Tuple[int, ...]], ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.points and not self.subspaces

    def distance(self, z: np.ndarray) -> np.ndarray:
        z = np.atleast_2d(z)
        out = np.full(z.shape[0], np.inf)
        for p in self.points:
            out = np.minimum(out, np.linalg.norm(z - np.asarray(p), axis=1))
        for p, coords in self.subspaces:
            idx = list(coords)
            out = np.minimum(out, np.linalg.norm(z[:, idx] - np.asarray(p)[idx], axis=1))
        return out


@dataclass
class AreaReport:
    """Fubini-Study area of a disk under a map."""

    value: float
    error: float
    method: str
    boundary_integral: Optional[float] = None
    n_zeros: Optional[int] = None
    nodes: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class MassReport:
    """
    A mixed Monge-Ampere mass with its error estimate.

    Attributes:
        value: Mass (extrapolated when ``extrapolated`` is set)
        error: Estimated absolute error, always finite
        order: Order p of the mass
        eps: Tube radius of the finest evaluation
        extrapolated: Richardson extrapolation over the eps schedule succeeded
        method: Backend tag
        seed: Seed of the Monte Carlo backend, if used
        budget: Node or sample count
        series: Values along the eps schedule
        exact_atom: Exact point mass from a local-degree oracle, if available
    """

    value: float
    error: float
    order: int
    eps: float = 0.0
    extrapolated: bool = False
    method: str = "gauss-legendre"
    seed: Optional[int] = None
    budget: int = 0
    series: List[float] = field(default_factory=list)
    exact_atom: Optional[float] = None

    def __post_init__(self):
        if not math.isfinite(self.error):
            raise QuadratureError(f"non-finite error estimate for order-{self.order} mass")

    def to_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v is not None}


def map_chunks(
    fn: Callable[[Any], Any],
    chunks: Iterable[Any],
    workers: int = 1,
    progress: bool = False,
    desc: Optional[str] = None,
) -> List[Any]:
    """
    Apply ``fn`` to chunks, in order, optionally on a thread pool.

    With ``progress`` a tqdm bar advances as chunks finish, for any number of
    workers.
    """
    chunks = list(chunks)
    bar = tqdm(total=len(chunks), desc=desc, disable=not progress)

    def run(chunk):
        out = fn(chunk)
        bar.update(1)
        return out

    with bar:
        if workers <= 1 or len(chunks) <= 1:
            return [run(c) for c in chunks]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, chunks))


def elementary_symmetric(eigs: np.ndarray, p: int) -> np.ndarray:
    """``e_p`` of the last axis of ``eigs``."""
    n = eigs.shape[-1]
    # e[j] after processing columns is the j-th elementary symmetric polynomial
    e = [np.ones(eigs.shape[:-1])] + [np.zeros(eigs.shape[:-1]) for _ in range(n)]
    for i in range(n):
        lam = eigs[..., i]
        for j in range(i + 1, 0, -1):
            e[j] = e[j] + lam * e[j - 1]
    return e[p]


def mass_constant(n: int, p: int) -> float:
    """Lebesgue density factor ``p! (n-p)! / pi^n`` of the order-p mixed mass."""
    return math.factorial(p) * math.factorial(n - p) / math.pi ** n


__all__ = [
    'QuadratureError',
    'ContourVanishingError',
    'ResidualTooLargeError',
    'ZeroCountDisagreementError',
    'DensitySignError',
    'SampleBudgetError',
    'ContourSpec',
    'PolydiskSpec',
    'BallSpec',
    'ZeroLocus',
    'AreaReport',
    'MassReport',
    'map_chunks',
    'elementary_symmetric',
    'mass_constant',
]
