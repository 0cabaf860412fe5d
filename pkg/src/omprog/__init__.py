"""Oriented matroid programs, lexicographic extensions and Euclideanness checks."""

__version__ = "0.1.0"
