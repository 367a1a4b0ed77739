"""Numerical toolkit for the kappa-Poincare group at desk scale."""

__version__ = "0.1.0"
