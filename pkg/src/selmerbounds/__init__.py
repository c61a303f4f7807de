"""Selmer rank bounds for odd-degree hyperelliptic Jacobians from class group data."""
__version__ = "0.1.0"
