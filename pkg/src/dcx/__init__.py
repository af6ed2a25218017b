"""Exact homological invariants of Artinian local algebras."""

__version__ = "0.1.0"
