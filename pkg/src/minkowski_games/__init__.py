"""Exact deciders, strategies and instance generators for Minkowski games."""

__version__ = "0.1.0"
