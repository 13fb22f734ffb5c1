"""Exact construction and verification of Krall and exceptional discrete/continuous polynomial families."""

__version__ = "0.1.0"
