"""
CLI - Command Line Interface

merolab command-line interface:
- examples: the built-in example registry
- reduce, iterate, degree: exact representation algebra
- classify, bubble, separation: convergence of families
- area, mass, king, rash: geometric quantities
- fatou-scan, gamma-volumes, inclusion: dynamics on P^2
"""

from .main import cli

__all__ = ['cli']
