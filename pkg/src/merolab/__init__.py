"""
merolab - convergence of meromorphic maps into projective space

Exact representations of meromorphic maps into P^N, numerical geometry of
their pullbacks and a classifier of map sequences.

Architecture:
    - poly: Exact sparse polynomials over Q(i), GCDs, log-scaled evaluation
    - projective: Homogeneous representations, reduction, iteration, monomial maps
    - quadrature: Zero counts, Fubini-Study areas, Monge-Ampere masses
    - convergence: Strong / Weak / Gamma verdicts for families of maps
    - dynamics: Orbits, Fatou scans, graph volumes and Fatou-set inclusions on P^2
    - registry, reports, cli: Built-in examples, structured reports and the command line
"""

from .__version__ import __version__

__all__ = ['__version__']
