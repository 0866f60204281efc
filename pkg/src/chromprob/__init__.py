"""Exact generalized chromatic probabilities for non-uniform random colorings."""

__version__ = "0.1.0"
