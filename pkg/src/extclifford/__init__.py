"""Exact Galois-field extended Clifford group toolkit for odd prime-power dimension."""

__version__ = "0.1.0"
