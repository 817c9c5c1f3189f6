"""Convergence levels and the evidence behind a verdict."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class Level(str, Enum):
    """Convergence level of a family; Strong implies Weak implies Gamma."""

    STRONG = "Strong"
    WEAK = "Weak"
    GAMMA = "Gamma"
    DIVERGENT = "Divergent"
    INCONCLUSIVE = "Inconclusive"

    @property
    def rank(self) -> Optional[int]:
        return _RANKS.get(self)

    @classmethod
    def parse(cls, text: str) -> "Level":
        for level in cls:
            if level.value.lower() == text.lower():
                return level
        raise ValueError(f"unknown level {text!r}")


_RANKS = {Level.DIVERGENT: 0, Level.GAMMA: 1, Level.WEAK: 2, Level.STRONG: 3}


def _plain(value: Any) -> Any:
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass
class Evidence:
    """Everything the classifier measured, stage by stage."""

    ks: List[int] = field(default_factory=list)
    rep_series: List[float] = field(default_factory=list)
    limit: Optional[str] = None
    limit_method: Optional[str] = None
    content: Optional[str] = None
    reduced: Optional[bool] = None
    divisor_counts: List[Any] = field(default_factory=list)     # DivisorCountReport
    mass_series: Dict[int, Any] = field(default_factory=dict)   # MassSeries per order
    slice_areas: List[Dict[str, Any]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    # -- stage checks ------------------------------------------------------

    @property
    def has_gamma(self) -> bool:
        """Limit candidate present and every counted hyperplane has bounded counts."""
        if self.limit is None or not self.divisor_counts:
            return False
        counted = [r for r in self.divisor_counts if r.skipped is None]
        return bool(counted) and all(r.bounded is True for r in counted)

    @property
    def has_weak(self) -> bool:
        return self.has_gamma and self.reduced is True

    @property
    def has_strong(self) -> bool:
        return (
            self.has_weak
            and bool(self.mass_series)
            and all(s.trend == "converging" for s in self.mass_series.values())
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'ks': list(self.ks),
            'rep_series': list(self.rep_series),
            'limit': self.limit,
            'limit_method': self.limit_method,
            'content': self.content,
            'reduced': self.reduced,
            'divisor_counts': _plain(self.divisor_counts),
            'mass_series': {str(p): _plain(s) for p, s in sorted(self.mass_series.items())},
            'slice_areas': _plain(self.slice_areas),
            'notes': list(self.notes),
        }


@dataclass
class Verdict:
    """A convergence level with its evidence."""

    family: str
    level: Level
    evidence: Evidence
    reason: str = ""

    def supports(self, level: Level) -> bool:
        """
        Whether this verdict asserts ``level``.

        Gamma, Weak and Strong are asserted when the verdict reaches them and
        the evidence for every level up to them is present.
        """
        level = Level(level)
        if level in (Level.DIVERGENT, Level.INCONCLUSIVE) or self.level.rank is None:
            return self.level is level
        if self.level.rank < level.rank or self.level is Level.DIVERGENT:
            return False
        checks = {Level.GAMMA: self.evidence.has_gamma, Level.WEAK: self.evidence.has_weak,
                  Level.STRONG: self.evidence.has_strong}
        return checks[level]

    @property
    def is_conclusive(self) -> bool:
        return self.level is not Level.INCONCLUSIVE

    def to_dict(self) -> Dict[str, Any]:
        return {
            'family': self.family,
            'level': self.level.value,
            'reason': self.reason,
            'evidence': self.evidence.to_dict(),
        }


__all__ = ['Level', 'Evidence', 'Verdict']
