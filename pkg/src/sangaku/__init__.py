"""Exact plane-geometry kernel for the two-circle / two-perpendicular-lines sangaku."""

__version__ = "0.1.0"
