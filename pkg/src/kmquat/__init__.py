"""Exact arithmetic for quaternion Kac-Moody Lie algebras."""
from __future__ import annotations

from .lie import LieElement, UniversalAlgebra
from .realization import CartanMatrix, Realization, realize, validate
from .scalars import GaussRational, Marker, QuatRational

__all__ = [
    "CartanMatrix",
    "GaussRational",
    "LieElement",
    "Marker",
    "QuatRational",
    "Realization",
    "UniversalAlgebra",
    "realize",
    "validate",
]
__version__ = "0.1.0"
