"""
Text serialization of map representations.

Format (one item per line, ``#`` starts a comment)::

    variables: z0 z1 z2
    kind: projective
    reduced: true
    component: 1 [2,1,0]; 1 [0,3,0]
    component: 1 [2,0,1]

Coefficients are exact Gaussian rational literals (``-3/4+1/2i``), so a
dump/load round trip is bit-exact. An empty component is written as
``component: 0``.
"""

from pathlib import Path
from typing import Any, Dict, List, Union
import logging
import re

from ..poly import GaussianRational, PolyTuple, SparsePoly
from .base import HomogRep, MapFormatError

logger = logging.getLogger(__name__)

_TERM = re.compile(r"^\s*(?P<coeff>\S+)\s*\[(?P<exps>[\d,\s]*)\]\s*$")


def dumps_map(rep: HomogRep) -> str:
    """Serialize a representation to text."""
    lines = []
    if rep.name:
        lines.append(f"# {rep.name}")
    lines.append("variables: " + " ".join(f"z{i}" for i in range(rep.nvars)))
    lines.append(f"kind: {'local' if rep.local else 'projective'}")
    lines.append(f"reduced: {'true' if rep.reduced else 'false'}")
    for component in rep.components:
        if component.is_zero:
            lines.append("component: 0")
            continue
        terms = "; ".join(
            f"{coeff} [{','.join(str(e) for e in exps)}]" for exps, coeff in component.terms
        )
        lines.append(f"component: {terms}")
    return "\n".join(lines) + "\n"


def loads_map(text: str, name: str = None) -> HomogRep:
    """
    Parse the text produced by :func:`dumps_map`.

    Raises:
        MapFormatError: On any malformed line
    """
    nvars = None
    local = False
    reduced = False
    components: List[SparsePoly] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise MapFormatError(f"line {lineno}: expected 'key: value', got {raw!r}")
        key, value = (part.strip() for part in line.split(":", 1))
        if key == "variables":
            nvars = len(value.split())
        elif key == "kind":
            if value not in ("projective", "local"):
                raise MapFormatError(f"line {lineno}: unknown kind {value!r}")
            local = value == "local"
        elif key == "reduced":
            reduced = value.lower() == "true"
        elif key == "component":
            if nvars is None:
                raise MapFormatError(f"line {lineno}: component before variables")
            components.append(_parse_component(value, nvars, lineno))
        else:
            raise MapFormatError(f"line {lineno}: unknown key {key!r}")
    if not components:
        raise MapFormatError("no components")
    try:
        return HomogRep(PolyTuple(components), reduced=reduced, local=local, name=name)
    except Exception as e:
        raise MapFormatError(f"invalid map: {e}") from e


def _parse_component(value: str, nvars: int, lineno: int) -> SparsePoly:
    if value == "0":
        return SparsePoly.zero(nvars)
    terms = {}
    for chunk in value.split(";"):
        match = _TERM.match(chunk)
        if match is None:
            raise MapFormatError(f"line {lineno}: malformed term {chunk.strip()!r}")
        try:
            coeff = GaussianRational.parse(match.group("coeff"))
        except ValueError as e:
            raise MapFormatError(f"line {lineno}: {e}") from e
        exps = tuple(int(x) for x in match.group("exps").split(",") if x.strip())
        if len(exps) != nvars:
            raise MapFormatError(f"line {lineno}: exponent vector {exps} needs {nvars} entries")
        terms[exps] = terms.get(exps, GaussianRational(0)) + coeff
    return SparsePoly(terms, nvars)


def load_map(path: Union[str, Path]) -> HomogRep:
    """Read a map file."""
    path = Path(path)
    logger.debug(f"Loading map from {path}")
    return loads_map(path.read_text(), name=path.stem)


def rep_to_dict(rep: HomogRep) -> Dict[str, Any]:
    """JSON-friendly description used in reports."""
    return {
        'name': rep.name,
        'kind': 'local' if rep.local else 'projective',
        'reduced': rep.reduced,
        'nvars': rep.nvars,
        'degree': rep.degree,
        'text': str(rep),
        'components': [
            [{'coeff': str(coeff), 'exponents': list(exps)} for exps, coeff in component.terms]
            for component in rep.components
        ],
    }


__all__ = ['dumps_map', 'loads_map', 'load_map', 'rep_to_dict']
