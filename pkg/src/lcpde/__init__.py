"""Quadratic line complexes, linearly degenerate wave equations and their
Segre, flatness and integrability classification."""

__version__ = "0.1.0"
