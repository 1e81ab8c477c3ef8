"""Finite 2-track groupoids and algebras, higher chain complexes, and
mod 2 Adams charts."""

__version__ = "0.1.0"
