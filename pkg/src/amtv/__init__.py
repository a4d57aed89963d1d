"""Alternating multiple T-values: exact word algebra, arbitrary-precision
evaluation, and integer-relation experiments."""

__version__ = "0.1.0"
