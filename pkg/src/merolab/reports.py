"""Structured run reports: JSON documents and CSV tables."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Union
import json
import logging
import math

import numpy as np
import pandas as pd

from .config import MeroLabConfig

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"

OK = "ok"
INCONCLUSIVE = "inconclusive"


def plain(value: Any) -> Any:
    """
    Convert results to JSON-compatible data.

    Objects with ``to_dict`` are expanded, complex numbers become ``[re, im]``
    pairs and non-finite floats become ``None``.
    """
    if hasattr(value, 'to_dict') and not isinstance(value, pd.DataFrame):
        return plain(value.to_dict())
    if isinstance(value, Enum):
        return plain(value.value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=str) if isinstance(value, (set, frozenset)) else value
        return [plain(v) for v in items]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [plain(float(value.real)), plain(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    if value is None or isinstance(value, str):
        return value
    return str(value)


@dataclass
class Report:
    """
    One command run.

    Attributes:
        command: CLI command name
        inputs: Arguments and options of the run
        config: Configuration echo
        results: Command results
        status: ``ok`` or ``inconclusive``
        table: Optional tabular view written for the csv format
    """

    command: str
    inputs: Dict[str, Any]
    config: Dict[str, Any]
    results: Any
    status: str = OK
    table: Optional[pd.DataFrame] = field(default=None, repr=False)

    @classmethod
    def create(cls, command: str, inputs: Dict[str, Any], config: MeroLabConfig, results: Any,
               status: str = OK, table: Optional[pd.DataFrame] = None) -> "Report":
        return cls(command, inputs, config.to_dict(), results, status, table)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': SCHEMA_VERSION,
            'command': self.command,
            'status': self.status,
            'inputs': plain(self.inputs),
            'config': plain(self.config),
            'results': plain(self.results),
        }

    def dumps(self) -> str:
        """Deterministic JSON text: sorted keys, no timestamps."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"

    def to_frame(self) -> pd.DataFrame:
        """The table, or a one-row flattening of the results."""
        if self.table is not None:
            return self.table
        flat = pd.json_normalize(plain(self.results) if isinstance(self.results, dict) else {'value': plain(self.results)})
        return flat.reindex(sorted(flat.columns), axis=1)

    def write(self, path: Union[str, Path], fmt: str = "json") -> Path:
        """Write the report as ``json`` or ``csv``."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "json":
            path.write_text(self.dumps())
        elif fmt == "csv":
            self.to_frame().to_csv(path, index=False, float_format="%.12g")
        else:
            raise ValueError(f"unknown report format {fmt!r}")
        logger.info(f"Wrote {fmt} report {path}")
        return path


def report_path(output_dir: Union[str, Path], command: str, target: Optional[str], fmt: str) -> Path:
    """``<output_dir>/<command>[-<target>].<fmt>``."""
    stem = command if not target else f"{command}-{Path(target).stem}"
    return Path(output_dir) / f"{stem}.{fmt}"


__all__ = ['Report', 'SCHEMA_VERSION', 'OK', 'INCONCLUSIVE', 'plain', 'report_path']
