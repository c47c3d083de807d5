"""Exact Bott-Borel-Weil and Littlewood-Richardson engine for Lagrangian Grassmannians LG(n, 2n)."""

__version__ = "0.1.0"
REGISTRY_VERSION = "1"
