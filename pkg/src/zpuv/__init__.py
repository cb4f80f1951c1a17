"""Additive cyclic and constacyclic codes over Z_p x (Z_p + uZ_p + vZ_p)."""

__version__ = "0.1.0"
