"""Parametrized families ``k -> f_k`` of maps with exact representations."""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union
import logging

from ..poly import GaussianRational, Number, PolyTuple
from ..projective import HomogRep, dehomogenize, iterate_closed, local_lift, reduce_rep
from ..quadrature import BallSpec, LogRadialLaw, PolydiskSpec

logger = logging.getLogger(__name__)

Domain = Union[PolydiskSpec, BallSpec]
LawFactory = Callable[[int, Domain], Optional[LogRadialLaw]]


def exact_point(point: Sequence[Number], max_denominator: int = 1024) -> Tuple[GaussianRational, ...]:
    """Snap a numeric point to nearby Gaussian rationals with small denominators."""
    out = []
    for value in point:
        if isinstance(value, (GaussianRational, Fraction, int)):
            out.append(GaussianRational.coerce(value))
            continue
        z = complex(value)
        out.append(GaussianRational(
            Fraction(z.real).limit_denominator(max_denominator),
            Fraction(z.imag).limit_denominator(max_denominator),
        ))
    return tuple(out)


@dataclass
class MapFamily:
    """
    A sequence of maps ``f_k`` for ``k_min <= k <= k_max``.

    Attributes:
        name: Label used in reports
        generator: Deterministic ``k -> HomogRep``
        k_min: First index
        k_max: Last index
        limit: Closed-form limit candidate, when one is known
        charts: Target charts tried by the rep-limit test; ``None`` selects
            coefficient-vector normalization
        source_chart: Source chart in which projective reps are read
        domain: Domain in the affine source coordinates
        law: Optional importance law ``(k, domain) -> LogRadialLaw`` for masses
        provenance: Where the family comes from
    """

    name: str
    generator: Callable[[int], HomogRep]
    k_min: int = 1
    k_max: int = 12
    limit: Optional[HomogRep] = None
    charts: Tuple[Optional[int], ...] = (None,)
    source_chart: int = 0
    domain: Optional[Domain] = None
    law: Optional[LawFactory] = None
    provenance: str = ""
    _cache: Dict[int, HomogRep] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.k_min < 1 or self.k_max < self.k_min:
            raise ValueError(f"need 1 <= k_min <= k_max, got {self.k_min}..{self.k_max}")

    @classmethod
    def constant(cls, rep: HomogRep, name: Optional[str] = None, **kwargs) -> "MapFamily":
        """The family ``f_k = rep`` for every ``k``."""
        return cls(name or rep.name or "constant", lambda k: rep, limit=rep, **kwargs)

    @classmethod
    def iterates(cls, f: HomogRep, name: Optional[str] = None, **kwargs) -> "MapFamily":
        """The iterates ``f^k`` of a self-map of P^n, computed in closed form."""
        if not f.is_self_map:
            raise ValueError(f"{f} is not a self-map of projective space")
        return cls(name or f"{f.name or 'f'}^k", lambda k: iterate_closed(f, k), **kwargs)

    def raw(self, k: int) -> HomogRep:
        """Generated representation before reduction."""
        rep = self.generator(k)
        if not isinstance(rep, HomogRep):
            raise TypeError(f"generator of {self.name} returned {type(rep).__name__} for k={k}")
        return rep

    def rep(self, k: int) -> HomogRep:
        """Reduced representation of ``f_k``."""
        if k not in self._cache:
            self._cache[k] = reduce_rep(self.raw(k))
        return self._cache[k]

    def affine(self, k: int) -> PolyTuple:
        """Reduced ``f_k`` as a tuple on the affine source."""
        return self.affine_of(self.rep(k))

    def affine_of(self, rep: HomogRep) -> PolyTuple:
        return rep.tuple if rep.local else dehomogenize(rep, self.source_chart)

    def ks(self, k_max: Optional[int] = None) -> List[int]:
        return list(range(self.k_min, min(k_max or self.k_max, self.k_max) + 1))

    @property
    def is_local(self) -> bool:
        return self.rep(self.k_min).local

    @property
    def nvars(self) -> int:
        """Dimension of the affine source."""
        return self.affine(self.k_min).nvars

    @property
    def target_size(self) -> int:
        """Number of homogeneous target coordinates."""
        return len(self.rep(self.k_min).tuple)

    def default_domain(self) -> Domain:
        if self.domain is not None:
            return self.domain
        n = self.nvars
        return PolydiskSpec((0j,) * n, (1.0,) * n)

    def importance_law(self, k: int, dom: Domain) -> Optional[LogRadialLaw]:
        return self.law(k, dom) if self.law is not None else None

    def with_range(self, k_min: Optional[int] = None, k_max: Optional[int] = None) -> "MapFamily":
        return replace(self, k_min=k_min or self.k_min, k_max=k_max or self.k_max)

    def with_domain(self, dom: Domain) -> "MapFamily":
        return replace(self, domain=dom)

    def with_chart(self, chart: int) -> "MapFamily":
        return replace(self, source_chart=chart)

    def scaled(self, factor: Number) -> "MapFamily":
        """Every member multiplied by the same nonzero constant."""
        if GaussianRational.coerce(factor).is_zero:
            raise ValueError("scaling factor must be nonzero")
        gen = self.generator
        limit = self.limit.with_tuple(self.limit.tuple.scale(factor)) if self.limit is not None else None
        return replace(self, generator=lambda k: (lambda r: r.with_tuple(r.tuple.scale(factor)))(gen(k)), limit=limit)

    def restricted(self, center: Sequence[Number], radius: float) -> "MapFamily":
        """
        The family in coordinates centered at a point of the affine source.

        The point is snapped to Gaussian rationals; the result is a local
        family on the polydisk of the given radius around the origin.
        """
        point = exact_point(center)
        chart = None if self.is_local else self.source_chart
        limit = local_lift(self.limit, chart, point) if self.limit is not None else None
        parent = self
        return MapFamily(
            name=f"{self.name}@{','.join(str(c) for c in point)}",
            generator=lambda k: local_lift(parent.rep(k), chart, point),
            k_min=self.k_min,
            k_max=self.k_max,
            limit=limit,
            domain=PolydiskSpec((0j,) * len(point), (radius,) * len(point)),
            provenance=self.provenance,
        )


__all__ = ['MapFamily', 'Domain', 'exact_point']
