"""Rearrangement, symmetrization and comparison toolkit."""
