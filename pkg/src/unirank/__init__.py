"""Rank universities across Wikipedia editions from their link networks."""

__version__ = "0.1.0"
