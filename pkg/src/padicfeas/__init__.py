"""Deciding p-adic solvability of sparse univariate integer polynomials."""

__version__ = "0.1.0"
