"""Radial Dunkl, Laguerre and Jacobi processes: root systems, Jack series, laws and simulation."""

__version__ = "0.1.0"
