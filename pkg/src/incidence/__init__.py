"""Exact computation of derivations and Jordan derivations of incidence algebras."""

__version__ = "0.1.0"
