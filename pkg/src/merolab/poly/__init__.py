"""
Exact polynomial layer.

- gaussian: Gaussian rational coefficients
- sparse: sparse multivariate polynomials and polynomial tuples
- gcd: exact GCD, exact division and tuple content (sympy bridge)
- logeval: overflow-safe evaluation in log coordinates
"""

from .gaussian import GaussianRational, Number, I, ONE, ZERO
from .sparse import PolyTuple, PolynomialError, SparsePoly, VariableCountError, poly_arith
from .gcd import (
    ExactDivisionError,
    divide_tuple,
    exact_divide,
    from_sympy,
    normalize_scalar,
    poly_gcd,
    to_sympy,
    tuple_content,
)
from .logeval import (
    CompiledTuple,
    IndeterminateEvaluationError,
    LogEvaluation,
    LogValue,
    eval_log,
    evaluate_scaled,
)

__all__ = [
    'GaussianRational',
    'Number',
    'I',
    'ONE',
    'ZERO',
    'SparsePoly',
    'PolyTuple',
    'PolynomialError',
    'VariableCountError',
    'ExactDivisionError',
    'IndeterminateEvaluationError',
    'poly_arith',
    'poly_gcd',
    'exact_divide',
    'tuple_content',
    'divide_tuple',
    'normalize_scalar',
    'to_sympy',
    'from_sympy',
    'eval_log',
    'evaluate_scaled',
    'CompiledTuple',
    'LogEvaluation',
    'LogValue',
]
