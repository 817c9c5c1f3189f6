"""
Shared fixtures for the merolab test suite.
"""
from dataclasses import replace

import numpy as np
import pytest

from merolab.config import MeroLabConfig, set_config
from merolab.poly import SparsePoly


@pytest.fixture(autouse=True)
def fresh_config():
    """Every test starts from the default configuration."""
    config = MeroLabConfig(seed=0, workers=1)
    set_config(config)
    yield config
    set_config(MeroLabConfig(seed=0, workers=1))


@pytest.fixture
def quick_config(fresh_config):
    """Reduced quadrature budgets for classifier runs."""
    return replace(
        fresh_config,
        k_max=10,
        mass_points=3,
        radial_panels=4,
        nodes_per_panel=6,
        angular_nodes=16,
        mc_samples=20_000,
        slice_bases=1,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def make_poly(rng):
    """Factory of small nonzero polynomials with Gaussian-integer coefficients."""

    def make(nvars: int = 2, terms: int = 3, max_degree: int = 3) -> SparsePoly:
        while True:
            out = {}
            for _ in range(terms):
                exps = tuple(int(e) for e in rng.integers(0, max_degree + 1, size=nvars))
                re, im = (int(v) for v in rng.integers(-4, 5, size=2))
                out[exps] = complex(re, im)
            poly = SparsePoly(out, nvars)
            if not poly.is_zero:
                return poly

    return make
