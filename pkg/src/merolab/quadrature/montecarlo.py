"""
Monte Carlo integration over balls and polydisks.

Samples come from an even mixture of the uniform law on the domain and a
per-coordinate log-radial law around a focus point, so that integrands which
concentrate at small scales are still resolved. Each draw is paired with an
antithetic partner (reflected through the center, or rotated by pi around the
focus). Worker streams are spawned from one ``SeedSequence`` and their partial
sums are combined in a fixed order, so a result depends only on the seed and
the worker count.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Union
import logging
import math

import numpy as np

from .base import BallSpec, PolydiskSpec, map_chunks

logger = logging.getLogger(__name__)

Domain = Union[BallSpec, PolydiskSpec]


@dataclass(frozen=True)
class LogRadialLaw:
    """
    Product of log-radial laws: ``|z_j - focus_j|`` is log-uniform on ``[rho_min_j, rho_max_j]``.

    The planar density of one factor is ``1 / (2 pi rho^2 L)`` with ``L = log(rho_max / rho_min)``.
    """

    focus: Sequence[complex]
    rho_min: Sequence[float]
    rho_max: Sequence[float]

    def __post_init__(self):
        if any(lo <= 0 or lo >= hi for lo, hi in zip(self.rho_min, self.rho_max)):
            raise ValueError(f"need 0 < rho_min < rho_max, got {self.rho_min} / {self.rho_max}")

    @property
    def log_widths(self) -> np.ndarray:
        return np.log(np.asarray(self.rho_max) / np.asarray(self.rho_min))

    def sample(self, rng: np.random.Generator, m: int) -> np.ndarray:
        n = len(self.focus)
        rho = np.asarray(self.rho_min) * np.exp(self.log_widths * rng.random((m, n)))
        theta = 2 * np.pi * rng.random((m, n))
        return np.asarray(self.focus) + rho * np.exp(1j * theta)

    def pdf(self, z: np.ndarray) -> np.ndarray:
        rho = np.abs(z - np.asarray(self.focus))
        inside = (rho >= np.asarray(self.rho_min)) & (rho <= np.asarray(self.rho_max))
        with np.errstate(divide="ignore"):
            factors = np.where(inside, 1.0 / (2 * np.pi * rho ** 2 * self.log_widths), 0.0)
        return np.prod(factors, axis=1)


@dataclass
class MonteCarloResult:
    """Mean and standard error of each integrand column."""

    values: np.ndarray
    errors: np.ndarray
    samples: int
    seed: int
    workers: int


def _chunk_sums(
    integrand: Callable[[np.ndarray], np.ndarray],
    dom: Domain,
    law: Optional[LogRadialLaw],
    seed_seq: np.random.SeedSequence,
    pairs: int,
    width: int,
) -> np.ndarray:
    """Sum and sum of squares of the antithetic pair means, per column."""
    rng = np.random.default_rng(seed_seq)
    center = np.asarray(dom.center, dtype=complex)
    if law is None:
        first = dom.sample_uniform(rng, pairs)
        second = 2 * center - first
    else:
        from_uniform = rng.random(pairs) < 0.5
        first = np.where(from_uniform[:, None], dom.sample_uniform(rng, pairs), law.sample(rng, pairs))
        focus = np.asarray(law.focus)
        # antithetic partner: reflection for uniform draws, rotation about the focus otherwise
        second = np.where(from_uniform[:, None], 2 * center - first, 2 * focus - first)
    estimates = []
    for z in (first, second):
        inside = dom.contains(z)
        proposal = np.full(len(z), 1.0 / dom.volume)
        if law is not None:
            proposal = 0.5 * proposal + 0.5 * law.pdf(z)
        values = np.zeros((len(z), width))
        if np.any(inside):
            values[inside] = integrand(z[inside])
        estimates.append(values / proposal[:, None])
    pair_means = 0.5 * (estimates[0] + estimates[1])
    return np.stack([pair_means.sum(axis=0), (pair_means ** 2).sum(axis=0)])


def integrate(
    integrand: Callable[[np.ndarray], np.ndarray],
    dom: Domain,
    samples: int,
    seed: int = 0,
    workers: int = 1,
    law: Optional[LogRadialLaw] = None,
    chunk: int = 50_000,
    progress: bool = False,
) -> MonteCarloResult:
    """
    Estimate ``int_dom integrand dlambda`` for a vector-valued integrand.

    Args:
        integrand: Maps ``(m, n)`` points to ``(m, k)`` real values
        dom: Ball or polydisk; points outside contribute zero
        samples: Total number of draws (rounded to whole antithetic pairs)
        seed: Root seed
        workers: Thread count; also the number of independent streams
        law: Optional log-radial law mixed in with weight 1/2
        chunk: Pairs per work item
        progress: Show a progress bar

    Returns:
        MonteCarloResult with one value and standard error per column
    """
    pairs = max(2, samples // 2)
    with np.errstate(all="ignore"):
        width = np.atleast_2d(integrand(np.asarray(dom.center, dtype=complex)[None, :])).shape[1]
    workers = max(1, workers)
    streams = np.random.SeedSequence(seed).spawn(workers)
    # work items: each worker stream handles a contiguous share, split into chunks
    items = []
    share = math.ceil(pairs / workers)
    for w, stream in enumerate(streams):
        remaining = min(share, pairs - w * share)
        children = stream.spawn(max(1, math.ceil(max(remaining, 0) / chunk)))
        for i, child in enumerate(children):
            size = min(chunk, remaining - i * chunk)
            if size > 0:
                items.append((child, size))

    def run(item):
        child, size = item
        return _chunk_sums(integrand, dom, law, child, size, width)

    partials: List[np.ndarray] = map_chunks(run, items, workers, progress=progress, desc="Monte Carlo")
    total = sum(partials[1:], partials[0])
    count = sum(size for _, size in items)
    mean = total[0] / count
    var = np.maximum(total[1] / count - mean ** 2, 0.0)
    errors = np.sqrt(var / max(count - 1, 1))
    logger.debug(f"Monte Carlo with {2 * count} samples, seed {seed}, {workers} workers: {mean}")
    return MonteCarloResult(mean, errors, 2 * count, seed, workers)


__all__ = ['LogRadialLaw', 'MonteCarloResult', 'integrate']
