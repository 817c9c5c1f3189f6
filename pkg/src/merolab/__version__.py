"""Version information for merolab."""

# Version is managed in pyproject.toml
try:
    from importlib.metadata import version
    __version__ = version("merolab")
except Exception:
    # Fallback for development
    __version__ = "0.1.0"

__title__ = "merolab"
__description__ = "Executable convergence theory for meromorphic maps into projective space"
__author__ = "merolab developers"
__license__ = "MIT"
