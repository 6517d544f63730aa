"""Elliptic normal bases over finite fields and their multiplication complexity."""

from .curve import O, Point, WeierstrassCurve
from .enb import EnbParams, params_computation
from .errors import EnbError
from .field import GF, ExtensionField, FieldElement, PrimeField

__all__ = [
    "GF",
    "O",
    "EnbError",
    "EnbParams",
    "ExtensionField",
    "FieldElement",
    "Point",
    "PrimeField",
    "WeierstrassCurve",
    "params_computation",
]

__version__ = "0.1.0"
