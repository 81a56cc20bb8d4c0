"""Reduction compiler and verification harness for locally checkable labeling problems."""

__version__ = "0.1.0"
