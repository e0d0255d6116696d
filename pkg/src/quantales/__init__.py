"""Finite commutative integral quantales: spectra, reticulation, topologies and class verification."""

from .core import Quantale, frame_of, validate_quantale
from .lattice import Lattice, ValidationError, lattice_from_order, validate_lattice

__all__ = [
    "Lattice",
    "Quantale",
    "ValidationError",
    "frame_of",
    "lattice_from_order",
    "validate_lattice",
    "validate_quantale",
]
