"""Exact computational kernel for the q-Brauer algebra and its cellular
structure, with the classical Brauer algebra as a built-in oracle."""

from .algebra import AlgebraContext, QBrauerElement
from .diagrams import BrauerDiagram
from .hecke import HeckeElement
from .scalars import Scalar

__all__ = [
    "AlgebraContext",
    "QBrauerElement",
    "BrauerDiagram",
    "HeckeElement",
    "Scalar",
]
__version__ = "0.1.0"
