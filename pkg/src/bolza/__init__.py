"""Diameter of generalized Bolza surfaces, computed and verified numerically."""

from .errors import (
    BolzaError,
    ConstructionError,
    DomainError,
    InsufficientBallError,
    NonHyperbolicError,
    NumericalPathologyError,
    ResourceLimitError,
)
from .group import TranslateBall, enumerate_ball, systole
from .hyperbolic import DiskPoint, Isometry, disk_distance
from .quotient import d0, dv, quotient_distance
from .surface import SurfaceParams, dual_isometry, surface_params

__version__ = "0.1.0"

__all__ = [
    "BolzaError",
    "ConstructionError",
    "DiskPoint",
    "DomainError",
    "InsufficientBallError",
    "Isometry",
    "NonHyperbolicError",
    "NumericalPathologyError",
    "ResourceLimitError",
    "SurfaceParams",
    "TranslateBall",
    "__version__",
    "d0",
    "disk_distance",
    "dual_isometry",
    "dv",
    "enumerate_ball",
    "quotient_distance",
    "surface_params",
    "systole",
]
