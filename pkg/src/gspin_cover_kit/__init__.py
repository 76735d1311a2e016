"""Finite, exact computations for the double cover of GSpin(2n+1) over a p-adic field."""

from .localfield import FieldElement, LocalField
from .rootdata import Root, TorusElement, WeylElement

__version__ = "0.1.0"

__all__ = ["FieldElement", "LocalField", "Root", "TorusElement", "WeylElement", "__version__"]
