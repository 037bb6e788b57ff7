"""Quantum K-ring of the complete flag manifold via q-difference Toda relations."""

__version__ = "0.1.0"
