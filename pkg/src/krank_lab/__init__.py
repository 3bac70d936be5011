"""Exact and asymptotic laboratory for Garvan k-rank partition statistics."""
__version__ = "0.1.0"
