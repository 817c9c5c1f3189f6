"""
Decide how a family of maps converges.

The decision runs in stages, each one adding evidence:

1. the reduced representations must converge (a limit candidate exists);
2. pullbacks of every hyperplane of the panel must have bounded zero counts
   on slices, which makes the family converge in the Gamma sense;
3. a reduced limit without common divisor makes it converge weakly;
4. converging mixed masses of every order make it converge strongly.

Numerical failures anywhere end in an Inconclusive verdict that keeps the
evidence gathered so far.
"""

from typing import List, Optional, Sequence
import logging

from ..config import MeroLabConfig, get_config
from ..poly import PolynomialError, PolyTuple, SparsePoly
from ..projective import ProjectiveMapError
from ..quadrature import QuadratureError, fs_area_interior
from .divisors import DivisorCountReport, divisor_count_bound, hyperplane_panel, slice_panel
from .family import Domain, MapFamily
from .limits import reducedness_of_limit, rep_limit
from .masses import CONVERGING, DIVERGING, mass_convergence
from .verdict import Evidence, Level, Verdict

logger = logging.getLogger(__name__)


def divisor_panel_reports(
    fam: MapFamily,
    dom: Domain,
    ks: Sequence[int],
    candidate: Optional[PolyTuple],
    content: Optional[SparsePoly],
    config: MeroLabConfig,
) -> List[DivisorCountReport]:
    """Divisor counts of every hyperplane of the configured panel."""
    panel = hyperplane_panel(fam.target_size, config.random_hyperplanes, config.seed)
    slices = slice_panel(dom, content, config.slice_bases, config.slice_fraction, config.seed)
    return [
        divisor_count_bound(
            fam, h, slices, ks, candidate=candidate, content=content,
            residual_limit=config.residual_limit, perturbation=config.perturbation,
            nodes=config.contour_nodes,
        )
        for h in panel
    ]


def slice_areas(fam: MapFamily, dom: Domain, ks: Sequence[int], config: MeroLabConfig) -> List[dict]:
    """Fubini-Study areas of ``f_k`` on the first exact slice of each direction."""
    slices = [s for s in slice_panel(dom, None, 1, config.slice_fraction, config.seed) if s.exact]
    picks = sorted({ks[0], ks[len(ks) // 2], ks[-1]})
    rows = []
    for sl in slices:
        for k in picks:
            restricted = [sl.restrict(c) for c in fam.affine(k).components]
            try:
                area = fs_area_interior(PolyTuple(restricted), sl.contour())
            except (PolynomialError, QuadratureError) as exc:
                logger.debug(f"{fam.name}: no slice area at k={k}: {exc}")
                continue
            rows.append({'k': k, 'direction': sl.direction, 'area': area.value, 'error': area.error})
    return rows


def _classify(fam: MapFamily, dom: Domain, ks: List[int], config: MeroLabConfig,
              evidence: Evidence, with_masses: bool) -> Verdict:
    limit = rep_limit(fam, ks=ks, dom=dom, config=config)
    evidence.rep_series = limit.series
    evidence.limit_method = limit.method
    candidate = limit.candidate

    if candidate is None:
        evidence.notes.append(limit.message)
        if fam.limit is not None:
            evidence.notes.append(f"closed-form limit {fam.limit} is not approached by the representations")
        evidence.divisor_counts = divisor_panel_reports(fam, dom, ks, None, None, config)
        return Verdict(fam.name, Level.DIVERGENT, evidence, f"representations do not converge: {limit.message}")

    content = reducedness_of_limit(candidate)
    evidence.limit = str(candidate)
    evidence.content = str(content.content)
    evidence.reduced = content.reduced
    logger.debug(f"{fam.name}: limit candidate {candidate}, {content}")

    evidence.divisor_counts = divisor_panel_reports(fam, dom, ks, candidate, content.content, config)
    unbounded = [r.hyperplane for r in evidence.divisor_counts if r.bounded is False]
    if unbounded:
        return Verdict(fam.name, Level.DIVERGENT, evidence,
                       f"pullback divisor counts grow for {', '.join(unbounded)}")
    counted = [r for r in evidence.divisor_counts if r.skipped is None]
    if not counted or any(r.bounded is None for r in counted):
        return Verdict(fam.name, Level.INCONCLUSIVE, evidence, "divisor counts are ambiguous")

    evidence.slice_areas = slice_areas(fam, dom, ks, config)
    if not content.reduced:
        return Verdict(fam.name, Level.GAMMA, evidence, f"limit has {content}")
    if not with_masses:
        evidence.notes.append("masses not evaluated")
        return Verdict(fam.name, Level.WEAK, evidence, "reduced limit; masses not evaluated")

    masses = mass_convergence(fam, dom, ks=ks[-config.mass_points:], candidate=candidate, config=config)
    evidence.mass_series = masses.series
    if masses.trend == CONVERGING:
        return Verdict(fam.name, Level.STRONG, evidence, "masses of every order converge")
    if masses.trend == DIVERGING:
        orders = [str(p) for p, s in masses.series.items() if s.trend == DIVERGING]
        return Verdict(fam.name, Level.WEAK, evidence, f"order-{','.join(orders)} masses do not converge")
    return Verdict(fam.name, Level.INCONCLUSIVE, evidence, "mass trend is ambiguous")


def classify(
    fam: MapFamily,
    dom: Optional[Domain] = None,
    config: Optional[MeroLabConfig] = None,
    with_masses: bool = True,
) -> Verdict:
    """
    Classify a family as Strong, Weak, Gamma, Divergent or Inconclusive.

    Args:
        fam: The family
        dom: Domain in the affine source (default: the family's)
        config: Tolerances and budgets (default: the global configuration)
        with_masses: Run the mass stage; without it a reduced limit stops at Weak

    Returns:
        Verdict with the evidence of every stage reached
    """
    config = config or get_config()
    dom = dom or fam.default_domain()
    ks = fam.ks()
    evidence = Evidence(ks=ks)
    logger.info(f"Classifying {fam.name} for k = {ks[0]}..{ks[-1]}")
    try:
        verdict = _classify(fam, dom, ks, config, evidence, with_masses)
    except (PolynomialError, ProjectiveMapError, QuadratureError, ValueError, ArithmeticError) as exc:
        evidence.notes.append(f"{type(exc).__name__}: {exc}")
        logger.warning(f"{fam.name}: classification failed: {exc}")
        verdict = Verdict(fam.name, Level.INCONCLUSIVE, evidence, str(exc))
    logger.info(f"{fam.name}: {verdict.level.value} ({verdict.reason})")
    return verdict


__all__ = ['classify', 'divisor_panel_reports', 'slice_areas']
