"""Exact verification workbench for colorful and matroidal transversal theorems."""

__version__ = "0.1.0"
