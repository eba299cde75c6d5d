"""Convex projective bending of Gromov-Thurston cross-sections."""
__version__ = "0.1.0"
