"""Exact computations with finite-dimensional quiver algebras."""

__version__ = "0.1.0"
