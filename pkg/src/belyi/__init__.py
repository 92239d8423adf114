"""Exact combinatorics of dessins d'enfants and Belyi branching data."""

__version__ = "0.1.0"
