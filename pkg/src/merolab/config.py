"""Configuration management for merolab."""

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional
import os

import yaml


@dataclass
class MeroLabConfig:
    """Tolerances, budgets and run settings shared by every module."""

    # Reproducibility
    seed: int = field(default_factory=lambda: int(os.getenv("MEROLAB_SEED", "0")))
    workers: int = field(default_factory=lambda: int(os.getenv("MEROLAB_WORKERS", "1")))
    progress: bool = False

    # Family ranges
    k_min: int = 1
    k_max: int = 12

    # Classifier
    rep_tol: float = 1e-8           # consecutive reps closer than this are Cauchy
    limit_tol: float = 0.1          # tail distance to an extrapolated candidate
    mass_tol: float = 0.05          # relative tail variation of a mass series
    mass_points: int = 4            # k values sampled for the mass trend
    cluster_separation: float = 0.05
    random_hyperplanes: int = 3
    slice_fraction: float = 0.5     # slice radius as a fraction of the domain radius
    slice_bases: int = 2            # base points per slice direction

    # Dynamics
    fs_tol: float = 1e-4
    perturbation: float = 1e-3
    tail_window: int = 5
    orbit_kmax: int = 40
    julia_margin: float = 0.02
    grid: int = 50

    # Quadrature
    residual_limit: float = 0.1
    contour_nodes: int = 256
    radial_panels: int = 8
    nodes_per_panel: int = 8
    angular_nodes: int = 32
    mc_samples: int = 200_000
    eps_ratio: float = 2.0
    mass_eps: float = 0.05

    # Output
    output_dir: Path = Path("reports")
    output_format: str = "json"

    def __post_init__(self):
        """Validate ranges."""
        self.output_dir = Path(self.output_dir)
        if self.k_min < 1 or self.k_max < self.k_min:
            raise ValueError(f"need 1 <= k_min <= k_max, got {self.k_min}..{self.k_max}")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"output_format must be json or csv, got {self.output_format!r}")
        if self.tail_window < 3:
            raise ValueError(f"tail_window must be at least 3, got {self.tail_window}")
        if self.eps_ratio <= 1:
            raise ValueError(f"eps_ratio must exceed 1, got {self.eps_ratio}")

    @classmethod
    def from_yaml(cls, path: Path) -> 'MeroLabConfig':
        """Load configuration from YAML file."""
        with open(path, 'r') as f:
            data = yaml.safe_load(f) or {}

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown configuration keys in {path}: {', '.join(unknown)}")

        if 'output_dir' in data:
            data['output_dir'] = Path(data['output_dir'])

        return cls(**data)

    def to_dict(self) -> Dict[str, Any]:
        """Plain-data echo embedded in reports."""
        data = asdict(self)
        data['output_dir'] = str(self.output_dir)
        return data

    def to_yaml(self, path: Path):
        """Save configuration to YAML file."""
        with open(path, 'w') as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False)

    def k_range(self, k_max: Optional[int] = None) -> range:
        return range(self.k_min, (k_max or self.k_max) + 1)


# Global config instance
_config: Optional[MeroLabConfig] = None


def get_config() -> MeroLabConfig:
    """Get global configuration instance."""
    global _config
    if _config is None:
        _config = MeroLabConfig()
    return _config


def set_config(config: MeroLabConfig):
    """Set global configuration instance."""
    global _config
    _config = config


def load_config(path: Path) -> MeroLabConfig:
    """Load and set global configuration from file."""
    config = MeroLabConfig.from_yaml(path)
    set_config(config)
    return config


__all__ = ['MeroLabConfig', 'get_config', 'set_config', 'load_config']
