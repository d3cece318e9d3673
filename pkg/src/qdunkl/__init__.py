"""Dunkl operators, reflection-group calculi and their curvature, in exact arithmetic."""

__version__ = "0.1.0"
