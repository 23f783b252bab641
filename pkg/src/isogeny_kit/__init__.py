"""Exact-arithmetic spin and Gspin groups of quadratic spaces (dims 1-8)."""

__version__ = "0.1.0"
