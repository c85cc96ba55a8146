"""Exact tools for linear systems of plane curves and related invariants."""

__version__ = "0.1.0"
