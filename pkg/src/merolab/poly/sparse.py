"""
Sparse multivariate polynomials over the Gaussian rationals.

Terms are stored as a tuple of ``(exponents, coefficient)`` pairs sorted by
exponent vector in descending lexicographic order, so two polynomials are equal
exactly when their term tuples are equal. Exponents are Python integers and may
be arbitrarily large.
"""

from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple
import logging

import numpy as np

from .gaussian import GaussianRational, Number

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


class PolynomialError(Exception):
    """Raised when a polynomial operation receives invalid input."""
    pass


class VariableCountError(PolynomialError):
    """Raised when operands live in rings with different variable counts."""
    pass


class SparsePoly:
    """Immutable sparse polynomial in ``nvars`` variables z0, z1, ..."""

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], Number], nvars: int):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        collected: Dict[Exponents, GaussianRational] = {}
        for exps, coeff in terms.items():
            key = tuple(int(e) for e in exps)
            if len(key) != nvars:
                raise VariableCountError(
                    f"exponent vector {key} has length {len(key)}, expected {nvars}"
                )
            if any(e < 0 for e in key):
                raise PolynomialError(f"negative exponent in {key}")
            value = GaussianRational.coerce(coeff)
            if key in collected:
                value = collected[key] + value
            collected[key] = value
        self._nvars = nvars
        self._terms: Tuple[Tuple[Exponents, GaussianRational], ...] = tuple(
            sorted(
                ((e, c) for e, c in collected.items() if not c.is_zero),
                key=lambda item: item[0],
                reverse=True,
            )
        )
        self._hash: Optional[int] = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def _from_sorted(cls, terms: Tuple[Tuple[Exponents, GaussianRational], ...], nvars: int) -> "SparsePoly":
        poly = cls.__new__(cls)
        poly._nvars = nvars
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls({}, nvars)

    @classmethod
    def constant(cls, value: Number, nvars: int) -> "SparsePoly":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "SparsePoly":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "SparsePoly":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls({tuple(exps): 1}, nvars)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: Number = 1) -> "SparsePoly":
        return cls({tuple(exponents): coeff}, len(exponents))

    @classmethod
    def variables(cls, nvars: int) -> List["SparsePoly"]:
        return [cls.variable(i, nvars) for i in range(nvars)]

    # -- structure ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Tuple[Tuple[Exponents, GaussianRational], ...]:
        return self._terms

    def __iter__(self) -> Iterator[Tuple[Exponents, GaussianRational]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return self.is_zero or (len(self._terms) == 1 and not any(self._terms[0][0]))

    @property
    def is_monomial(self) -> bool:
        """True for a single nonzero term."""
        return len(self._terms) == 1

    @property
    def is_real(self) -> bool:
        return all(c.is_real for _, c in self._terms)

    @property
    def leading_term(self) -> Tuple[Exponents, GaussianRational]:
        """The lexicographically greatest term."""
        if self.is_zero:
            raise PolynomialError("zero polynomial has no leading term")
        return self._terms[0]

    @property
    def leading_coefficient(self) -> GaussianRational:
        return self.leading_term[1]

    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return max(sum(e) for e, _ in self._terms)

    def degrees(self) -> set:
        return {sum(e) for e, _ in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree_in(self, index: int) -> int:
        if self.is_zero:
            return -1
        return max(e[index] for e, _ in self._terms)

    def support(self) -> frozenset:
        """Indices of variables that occur with positive exponent."""
        return frozenset(i for e, _ in self._terms for i, v in enumerate(e) if v > 0)

    def monomial_content(self) -> Exponents:
        """Elementwise minimum of all exponent vectors."""
        if self.is_zero:
            raise PolynomialError("zero polynomial has no monomial content")
        exps = [e for e, _ in self._terms]
        return tuple(min(column) for column in zip(*exps)) if self._nvars else ()

    def coefficient(self, exponents: Sequence[int]) -> GaussianRational:
        key = tuple(exponents)
        for e, c in self._terms:
            if e == key:
                return c
        return GaussianRational(0)

    def as_dict(self) -> Dict[Exponents, GaussianRational]:
        return dict(self._terms)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "SparsePoly") -> None:
        if self._nvars != other._nvars:
            raise VariableCountError(
                f"variable-count mismatch: {self._nvars} vs {other._nvars}"
            )

    def _lift(self, other) -> Optional["SparsePoly"]:
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        if isinstance(other, (int, float, complex, GaussianRational)) or hasattr(other, "numerator"):
            return SparsePoly.constant(other, self._nvars)
        return None

    def __add__(self, other) -> "SparsePoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        merged = dict(self._terms)
        for e, c in other._terms:
            merged[e] = merged[e] + c if e in merged else c
        return SparsePoly(merged, self._nvars)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._from_sorted(tuple((e, -c) for e, c in self._terms), self._nvars)

    def __sub__(self, other) -> "SparsePoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, (int, float, complex, GaussianRational)) or (
            hasattr(other, "numerator") and not isinstance(other, SparsePoly)
        ):
            return self.scale(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check(other)
        if self.is_zero or other.is_zero:
            return SparsePoly.zero(self._nvars)
        product: Dict[Exponents, GaussianRational] = {}
        for ea, ca in self._terms:
            for eb, cb in other._terms:
                key = tuple(x + y for x, y in zip(ea, eb))
                value = ca * cb
                product[key] = product[key] + value if key in product else value
        return SparsePoly(product, self._nvars)

    __rmul__ = __mul__

    def scale(self, factor: Number) -> "SparsePoly":
        factor = GaussianRational.coerce(factor)
        if factor.is_zero:
            return SparsePoly.zero(self._nvars)
        return SparsePoly._from_sorted(tuple((e, c * factor) for e, c in self._terms), self._nvars)

    def __truediv__(self, other: Number) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            return NotImplemented
        return self.scale(GaussianRational(1) / GaussianRational.coerce(other))

    def __pow__(self, exponent: int) -> "SparsePoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise PolynomialError("polynomial powers need a nonnegative integer exponent")
        if self.is_monomial:
            (e, c), = self._terms
            return SparsePoly._from_sorted(
                ((tuple(x * exponent for x in e), c ** exponent),), self._nvars
            )
        result = SparsePoly.one(self._nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparsePoly):
            return self._nvars == other._nvars and self._terms == other._terms
        if isinstance(other, (int, GaussianRational)):
            return self == SparsePoly.constant(other, self._nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, self._terms))
        return self._hash

    # -- calculus and substitution ---------------------------------------

    def derivative(self, index: int) -> "SparsePoly":
        """Partial derivative with respect to variable ``index``."""
        out: Dict[Exponents, GaussianRational] = {}
        for e, c in self._terms:
            if e[index] == 0:
                continue
            key = e[:index] + (e[index] - 1,) + e[index + 1:]
            out[key] = c * e[index]
        return SparsePoly(out, self._nvars)

    def shift_monomial(self, exponents: Sequence[int], subtract: bool = False) -> "SparsePoly":
        """Multiply (or divide, with ``subtract``) by the monomial z^exponents."""
        sign = -1 if subtract else 1
        shifted = []
        for e, c in self._terms:
            key = tuple(x + sign * y for x, y in zip(e, exponents))
            if any(v < 0 for v in key):
                raise PolynomialError(f"monomial z^{tuple(exponents)} does not divide the term z^{e}")
            shifted.append((key, c))
        return SparsePoly._from_sorted(tuple(shifted), self._nvars)

    def compose(self, substitutions: Sequence["SparsePoly"]) -> "SparsePoly":
        """Substitute ``substitutions[i]`` for variable i.

        All substitutions must share one variable count, which becomes the
        variable count of the result.
        """
        if len(substitutions) != self._nvars:
            raise VariableCountError(
                f"compose needs {self._nvars} substitutions, got {len(substitutions)}"
            )
        if not substitutions:
            return self
        target = substitutions[0].nvars
        for s in substitutions:
            if s.nvars != target:
                raise VariableCountError("substitutions live in different rings")
        powers: Dict[Tuple[int, int], SparsePoly] = {}

        def power(i: int, e: int) -> SparsePoly:
            key = (i, e)
            if key not in powers:
                powers[key] = substitutions[i] ** e
            return powers[key]

        result = SparsePoly.zero(target)
        for e, c in self._terms:
            term = SparsePoly.constant(c, target)
            for i, v in enumerate(e):
                if v:
                    term = term * power(i, v)
            result = result + term
        return result

    def restrict(self, values: Mapping[int, Number]) -> "SparsePoly":
        """Substitute exact values for some variables, keeping the variable count."""
        fixed = {i: GaussianRational.coerce(v) for i, v in values.items()}
        out: Dict[Exponents, GaussianRational] = {}
        for e, c in self._terms:
            value = c
            key = list(e)
            for i, v in fixed.items():
                if key[i]:
                    value = value * v ** key[i]
                    key[i] = 0
            if value.is_zero:
                continue
            k = tuple(key)
            out[k] = out[k] + value if k in out else value
        return SparsePoly(out, self._nvars)

    def translate(self, center: Sequence[Number]) -> "SparsePoly":
        """The polynomial w -> p(center + w)."""
        if len(center) != self._nvars:
            raise VariableCountError("center has the wrong number of coordinates")
        xs = SparsePoly.variables(self._nvars)
        subs = [x + GaussianRational.coerce(c) for x, c in zip(xs, center)]
        return self.compose(subs)

    def evaluate_exact(self, point: Sequence[Number]) -> GaussianRational:
        if len(point) != self._nvars:
            raise VariableCountError("point has the wrong number of coordinates")
        pt = [GaussianRational.coerce(v) for v in point]
        total = GaussianRational(0)
        for e, c in self._terms:
            value = c
            for x, k in zip(pt, e):
                if k:
                    value = value * x ** k
            total = total + value
        return total

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Plain complex evaluation at an ``(m, nvars)`` array of points."""
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        out = np.zeros(pts.shape[0], dtype=complex)
        for e, c in self._terms:
            value = np.full(pts.shape[0], complex(c))
            for i, k in enumerate(e):
                if k:
                    value = value * pts[:, i] ** k
            out += value
        return out

    def univariate_coefficients(self, index: int) -> List[complex]:
        """Dense coefficients (highest degree first) of a polynomial in one variable."""
        others = [i for i in range(self._nvars) if i != index]
        degree = max(self.degree_in(index), 0)
        dense = [0j] * (degree + 1)
        for e, c in self._terms:
            if any(e[i] for i in others):
                raise PolynomialError("polynomial depends on more than one variable")
            dense[degree - e[index]] += complex(c)
        return dense

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self._terms:
            factors = [
                f"z{i}" if k == 1 else f"z{i}^{k}" for i, k in enumerate(e) if k
            ]
            if not factors:
                parts.append(f"({c})" if not c.is_real else str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                coeff = f"({c})" if not c.is_real else str(c)
                parts.append("*".join([coeff] + factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SparsePoly({self}, nvars={self._nvars})"


def poly_arith(a: SparsePoly, b: SparsePoly, op: str) -> SparsePoly:
    """
    Exact sum or product of two polynomials.

    Args:
        a: Left operand
        b: Right operand
        op: ``"add"`` or ``"mul"``

    Returns:
        The result in canonical form

    Raises:
        VariableCountError: If the operands have different variable counts
    """
    if a.nvars != b.nvars:
        raise VariableCountError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"Unknown operation: {op}")


class PolyTuple:
    """
    The ordered components (f^0, ..., f^N) of a map into P^N.

    Components share one variable count; at least one is nonzero. The tuple
    is homogeneous when every term of every component has the same total
    degree.
    """

    __slots__ = ("_components", "_nvars", "_degree", "_homogeneous")

    def __init__(self, components: Iterable[SparsePoly]):
        comps = tuple(components)
        if not comps:
            raise PolynomialError("a polynomial tuple needs at least one component")
        nvars = comps[0].nvars
        for c in comps:
            if c.nvars != nvars:
                raise VariableCountError("tuple components live in different rings")
        if all(c.is_zero for c in comps):
            raise PolynomialError("all components are identically zero")
        degrees = set()
        for c in comps:
            degrees |= c.degrees()
        self._components = comps
        self._nvars = nvars
        self._homogeneous = len(degrees) == 1
        self._degree = next(iter(degrees)) if self._homogeneous else None

    @property
    def components(self) -> Tuple[SparsePoly, ...]:
        return self._components

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def homogeneous(self) -> bool:
        return self._homogeneous

    @property
    def degree(self) -> Optional[int]:
        """Common degree of a homogeneous tuple, ``None`` otherwise."""
        return self._degree

    def max_degree(self) -> int:
        return max(c.total_degree() for c in self._components)

    def __len__(self) -> int:
        return len(self._components)

    def __getitem__(self, index: int) -> SparsePoly:
        return self._components[index]

    def __iter__(self) -> Iterator[SparsePoly]:
        return iter(self._components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyTuple):
            return NotImplemented
        return self._components == other._components

    def __hash__(self) -> int:
        return hash(self._components)

    @property
    def is_monomial(self) -> bool:
        """Every component is a single term or zero."""
        return all(len(c) <= 1 for c in self._components)

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self._components)

    def scale(self, factor: Number) -> "PolyTuple":
        return PolyTuple(c.scale(factor) for c in self._components)

    def multiply(self, g: SparsePoly) -> "PolyTuple":
        return PolyTuple(c * g for c in self._components)

    def normalized(self) -> "PolyTuple":
        """Divide by the leading coefficient of the first nonzero component."""
        lead = next(c for c in self._components if not c.is_zero).leading_coefficient
        if lead == 1:
            return self
        return self.scale(GaussianRational(1) / lead)

    def map(self, fn) -> "PolyTuple":
        return PolyTuple(fn(c) for c in self._components)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Plain complex evaluation, shape ``(m, N+1)``."""
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        return np.stack([c.evaluate(pts) for c in self._components], axis=-1)

    def jacobian(self, points: np.ndarray) -> np.ndarray:
        """Plain complex Jacobian ``dF_j/dz_i``, shape ``(m, N+1, n)``."""
        pts = np.atleast_2d(np.asarray(points, dtype=complex))
        out = np.zeros((pts.shape[0], len(self._components), self._nvars), dtype=complex)
        for j, c in enumerate(self._components):
            for i in range(self._nvars):
                out[:, j, i] = c.derivative(i).evaluate(pts)
        return out

    def evaluate_exact(self, point: Sequence[Number]) -> Tuple[GaussianRational, ...]:
        return tuple(c.evaluate_exact(point) for c in self._components)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self._components) + ")"

    def __repr__(self) -> str:
        return f"PolyTuple{self}"


__all__ = [
    'SparsePoly',
    'PolyTuple',
    'Exponents',
    'PolynomialError',
    'VariableCountError',
    'poly_arith',
]
