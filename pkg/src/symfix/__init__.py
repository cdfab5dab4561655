"""Symmetry-fixing invariants of small graphs."""

__version__ = "0.1.0"
