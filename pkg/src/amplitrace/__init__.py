"""Exact Lie-theoretic combinatorics and rank-one hyperbolic geometry for amplified period bounds."""

__version__ = "0.1.0"
