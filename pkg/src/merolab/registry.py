"""Built-in example maps and families."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union
import logging

from .config import MeroLabConfig, get_config
from .convergence import MapFamily
from .poly import PolyTuple, SparsePoly
from .projective import HomogRep, load_map
from .quadrature import BallSpec, PolydiskSpec, rashkovskii_eps, rashkovskii_law, rashkovskii_lift

logger = logging.getLogger(__name__)

FAMILY = "family"
MAP = "map"

Target = Union[MapFamily, HomogRep]


class UnknownExampleError(Exception):
    """Raised when a name is neither a registry entry nor a map file."""


@dataclass(frozen=True)
class ExampleRegistryEntry:
    """
    A named example.

    Attributes:
        name: Registry key
        kind: ``family`` (a sequence ``k -> f_k``) or ``map`` (a self-map of P^n)
        build: Constructor taking the entry's parameters as keywords
        provenance: Where the example comes from and what it shows
        parameters: Default keyword parameters of ``build``
        iterates: Builder of the iterate family with its closed-form limit (maps only)
    """

    name: str
    kind: str
    build: Callable[..., Target] = field(compare=False)
    provenance: str
    parameters: Dict[str, Any] = field(default_factory=dict, compare=False)
    iterates: Optional[Callable[..., MapFamily]] = field(default=None, compare=False)

    def construct(self, **overrides) -> Target:
        unknown = sorted(set(overrides) - set(self.parameters))
        if unknown:
            raise ValueError(f"{self.name} takes no parameter {', '.join(unknown)}")
        return self.build(**{**self.parameters, **overrides})

    def iterate_family(self, k_max: int = 12, **overrides) -> MapFamily:
        if self.kind != MAP:
            raise ValueError(f"{self.name} is a family, not a map")
        if self.iterates is None:
            return MapFamily.iterates(self.construct(**overrides), k_max=k_max)
        return self.iterates(k_max=k_max, **{**self.parameters, **overrides})

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'kind': self.kind,
            'provenance': self.provenance,
            'parameters': dict(sorted(self.parameters.items())),
        }


def _local(components: List[SparsePoly], name: str) -> HomogRep:
    return HomogRep(PolyTuple(components), local=True, name=name)


def exp_family(k_max: int = 12) -> MapFamily:
    """``[z^k : z^k + z^(k-1) + ... + 1/k!]`` on the unit disk."""

    def member(k: int) -> HomogRep:
        tail = SparsePoly.zero(1)
        for j in range(k + 1):
            tail = tail + SparsePoly.monomial((k - j,), Fraction(1, factorial(j)))
        return _local([SparsePoly.monomial((k,)), tail], f"exp_{k}")

    return MapFamily("exp", member, k_max=k_max, domain=PolydiskSpec((0j,), (1.0,)),
                     provenance="partial sums of exp(1/z); H = {Z0 = 0} pulls back to k[0]")


def exp_b_family(k_max: int = 12) -> MapFamily:
    """``[z : z - 1/k]`` on the unit disk."""
    z = SparsePoly.variable(0, 1)
    return MapFamily(
        "exp-b",
        lambda k: _local([z, z - SparsePoly.constant(Fraction(1, k), 1)], f"exp-b_{k}"),
        k_max=k_max,
        limit=_local([z, z], "exp-b_limit"),
        domain=PolydiskSpec((0j,), (1.0,)),
        provenance="converges to [1:1] off 0 with bounded divisor counts; the limit [z:z] has common divisor z",
    )


def rutish_family(k_max: int = 12) -> MapFamily:
    """``[z1 : 2^-k z2^k]`` on the unit bidisk."""
    z1, z2 = SparsePoly.variables(2)
    return MapFamily(
        "rutish",
        lambda k: _local([z1, (z2 ** k).scale(Fraction(1, 2 ** k))], f"rutish_{k}"),
        k_max=k_max,
        limit=_local([z1, SparsePoly.zero(2)], "rutish_limit"),
        domain=PolydiskSpec((0j, 0j), (1.0, 1.0)),
        provenance="converges uniformly off {z1 = 0}; {Z1 = 0} pulls back to k[z2 = 0]",
    )


def rash_family(k_max: int = 6, samples: Optional[int] = None) -> MapFamily:
    """``[z1 : z1 - eps_k : z2 : z3^k]`` with ``eps_k = 2^-4k`` on the ball of radius 1/2 in C^3."""
    z1, z2, _ = SparsePoly.variables(3)
    samples = samples or get_config().mc_samples
    return MapFamily(
        "rash",
        lambda k: _local(list(rashkovskii_lift(k, rashkovskii_eps(k)).components), f"rash_{k}"),
        k_max=k_max,
        limit=_local([z1, z1, z2, SparsePoly.zero(3)], "rash_limit"),
        domain=BallSpec((0j, 0j, 0j), 0.5, samples=samples),
        # |z3^k|^2 = |z3|^(2k)
        law=lambda k, dom: rashkovskii_law(2 * k, float(rashkovskii_eps(k)), dom.radius),
        provenance="converges weakly to [z1:z1:z2:0]; the order-3 masses grow at least like k",
    )


def cremona_map() -> HomogRep:
    """The Cremona involution ``[z1 z2 : z0 z2 : z0 z1]``."""
    return HomogRep.from_components(
        [SparsePoly.monomial(e) for e in ((0, 1, 1), (1, 0, 1), (1, 1, 0))], name="cremona"
    )


def map_f(d: int = 2) -> HomogRep:
    """``[z0^d z1 : z1^(d+1) : z0^d z2]``, of algebraic and topological degree ``d``."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    return HomogRep.from_components(
        [SparsePoly.monomial(e) for e in ((d, 1, 0), (0, d + 1, 0), (d, 0, 1))],
        name="deg2" if d == 2 else f"deg-{d}",
    )


def map_f_iterates(d: int = 2, k_max: int = 12, radius: float = 0.9) -> MapFamily:
    """
    Iterates of ``map_f(d)`` read in the chart ``z0 = 1`` over a polydisk inside ``{|u1| < 1}``.

    There the iterates converge to ``[0 : 0 : u2]``, whose common divisor
    ``u2 = 0`` is the set Delta* where bubbles appear.
    """
    _, _, z2 = SparsePoly.variables(3)
    zero = SparsePoly.zero(3)
    return MapFamily.iterates(
        map_f(d), k_max=k_max,
        limit=HomogRep.from_components([zero, zero, z2], name="Delta*-limit"),
        domain=PolydiskSpec((0j, 0j), (radius, radius)),
        provenance=f"iterates of the degree-{d} map on {{|u1| < {radius}}}",
    )


_ENTRIES = {
    entry.name: entry
    for entry in (
        ExampleRegistryEntry("exp", FAMILY, exp_family,
                             "partial sums of exp(1/z) on the disk: not Gamma-convergent, k-fold pole divisor",
                             {'k_max': 12}),
        ExampleRegistryEntry("exp-b", FAMILY, exp_b_family,
                             "[z : z - 1/k] on the disk: Gamma-convergent, not weakly (limit [z:z])",
                             {'k_max': 12}),
        ExampleRegistryEntry("rutish", FAMILY, rutish_family,
                             "[z1 : 2^-k z2^k] on the bidisk: uniform limit off a line, not Gamma-convergent",
                             {'k_max': 12}),
        ExampleRegistryEntry("rash", FAMILY, rash_family,
                             "[z1 : z1 - eps_k : z2 : z3^k] on B(1/2) in C^3: weakly but not strongly convergent",
                             {'k_max': 6}),
        ExampleRegistryEntry("cremona", MAP, cremona_map,
                             "[z1z2 : z0z2 : z0z1]: involution of P^2 whose Fatou set misses three lines", {}),
        ExampleRegistryEntry("deg2", MAP, map_f,
                             "[z0^2 z1 : z1^3 : z0^2 z2]: degree-2 map of P^2 with the Fatou components "
                             "Phi1 -> r, Phi2 -> q and the Gamma-only set Delta*", {'d': 2}, map_f_iterates),
        ExampleRegistryEntry("deg-d", MAP, map_f,
                             "[z0^d z1 : z1^(d+1) : z0^d z2]: the same dynamics in any degree d", {'d': 3},
                             map_f_iterates),
    )
}


def names() -> List[str]:
    return sorted(_ENTRIES)


def entries() -> List[ExampleRegistryEntry]:
    return [_ENTRIES[n] for n in names()]


def get_entry(name: str) -> ExampleRegistryEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise UnknownExampleError(f"unknown example {name!r}; known examples: {', '.join(names())}") from None


def build(name: str, **overrides) -> Target:
    """Construct a registry entry, overriding its default parameters."""
    return get_entry(name).construct(**overrides)


def load_target(name_or_path: str, **overrides) -> Target:
    """A registry example by name, or a map read from a serialized map file."""
    if name_or_path in _ENTRIES:
        return build(name_or_path, **overrides)
    path = Path(name_or_path)
    if path.is_file():
        logger.debug(f"Loading map from {path}")
        return load_map(path)
    raise UnknownExampleError(
        f"{name_or_path!r} is neither an example nor a map file; known examples: {', '.join(names())}"
    )


def as_family(target: Target, iterates: bool = False, k_max: Optional[int] = None,
              config: Optional[MeroLabConfig] = None) -> MapFamily:
    """
    The family to classify for a target.

    A family is returned as is (with ``k_max`` applied); a single map becomes
    the constant family, or the family of its iterates when ``iterates`` is set.
    """
    config = config or get_config()
    if isinstance(target, MapFamily):
        return target.with_range(k_max=k_max) if k_max else target
    k_max = k_max or config.k_max
    if iterates:
        return MapFamily.iterates(target, k_min=config.k_min, k_max=k_max)
    return MapFamily.constant(target, k_min=config.k_min, k_max=k_max)


def load_family(name_or_path: str, iterates: bool = False, k_max: Optional[int] = None,
                config: Optional[MeroLabConfig] = None) -> MapFamily:
    """Resolve a name or map file to a family; registry maps use their iterate builder."""
    config = config or get_config()
    entry = _ENTRIES.get(name_or_path)
    if iterates and entry is not None and entry.kind == MAP:
        return entry.iterate_family(k_max=k_max or config.k_max)
    return as_family(load_target(name_or_path), iterates, k_max, config)


__all__ = [
    'ExampleRegistryEntry',
    'UnknownExampleError',
    'FAMILY',
    'MAP',
    'names',
    'entries',
    'get_entry',
    'build',
    'load_target',
    'as_family',
    'load_family',
    'exp_family',
    'exp_b_family',
    'rutish_family',
    'rash_family',
    'cremona_map',
    'map_f',
    'map_f_iterates',
]
