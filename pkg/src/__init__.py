"""Finite-resolution symbolic dynamics toolkit"""

__version__ = "0.1.0"
