"""Worst-case fairness measures for TU cooperative games."""

__version__ = "0.1.0"
