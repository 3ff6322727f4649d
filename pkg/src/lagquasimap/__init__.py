"""Exact combinatorics and algebra of the Drinfeld Lagrangian Grassmannian."""
__version__ = "0.1.0"
