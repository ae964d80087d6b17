"""Finite-group tools for SU(d) dynamical decoupling and symmetric codes."""

__version__ = "0.1.0"
