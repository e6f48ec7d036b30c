"""Automorphism strata and inertia components for Godeaux parameter spaces."""

__version__ = "0.1.0"
