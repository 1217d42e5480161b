"""Exact arithmetic toolkit for p-adic interpolation of GL(3) L-values."""

__version__ = "0.1.0"
