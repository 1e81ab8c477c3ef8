"""Mod 2 Steenrod algebra, minimal resolutions and Ext charts."""
from .algebra import (BasisMismatch, SteenrodElement, SteenrodError, adem_reduce, admissible_basis,
                      dim_A, is_admissible, multiply, parse_element)
from .resolution import (ExtChart, IndexOutOfRange, InvalidModule, MinimalResolution, ModulePresentation,
                         UnknownFormat, chart_from_tsv, cocycle_rep, emit_chart, ext_chart, minimal_resolution)

__all__ = [
    "BasisMismatch", "SteenrodElement", "SteenrodError", "adem_reduce", "admissible_basis", "dim_A",
    "is_admissible", "multiply", "parse_element", "ExtChart", "IndexOutOfRange", "InvalidModule",
    "MinimalResolution", "ModulePresentation", "UnknownFormat", "chart_from_tsv", "cocycle_rep",
    "emit_chart", "ext_chart", "minimal_resolution",
]
