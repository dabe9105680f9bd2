"""Numerical toolkit for the linear stability of a line soliton on the 2D Toda lattice."""

__version__ = "0.1.0"
