"""Exact computations with double affine Hecke operators and their stable limits."""

from .kernel import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
