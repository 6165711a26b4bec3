"""Exact kernel for pre-Cartier (co)quasitriangular bialgebras."""

__version__ = "0.1.0"
