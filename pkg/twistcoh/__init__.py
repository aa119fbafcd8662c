"""Exact computations in twisted de Rham cohomology and twisted K-theory characteristic classes."""

__version__ = '1.0.0'
