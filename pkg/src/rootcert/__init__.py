"""Exact root-system machinery for divergence certificates on diagonal flows."""

from .rootcore import (
    NotFiniteTypeError,
    RootcertError,
    RootSystem,
    RootVector,
    TorusVector,
    Weight,
    build_root_system,
)

__version__ = "0.1.0"

__all__ = [
    "build_root_system",
    "RootSystem",
    "RootVector",
    "TorusVector",
    "Weight",
    "RootcertError",
    "NotFiniteTypeError",
    "__version__",
]
