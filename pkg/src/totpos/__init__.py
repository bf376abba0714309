"""Exact computations in totally positive monoids attached to simply-laced Cartan graphs."""

from __future__ import annotations

from .coxeter import CartanGraph, WeylElement, cartan_type, type_A
from .gmonoid import GElement, Letter, Neg, Pos, Torus
from .semifield import RATFUNC, RATIONAL, TRIVIAL, TROPICAL, formal
from .uplus import UPlusElement

__all__ = [
    "CartanGraph",
    "WeylElement",
    "cartan_type",
    "type_A",
    "GElement",
    "Letter",
    "Pos",
    "Neg",
    "Torus",
    "UPlusElement",
    "RATIONAL",
    "RATFUNC",
    "TROPICAL",
    "TRIVIAL",
    "formal",
]

__version__ = "0.1.0"
