"""Exact Hecke traces, Plancherel measures and vertical equidistribution experiments."""

__version__ = "0.1.0"
