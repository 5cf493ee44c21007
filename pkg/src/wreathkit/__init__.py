"""Computable models of locally compact wreath products and their satellites."""
from .groups import FiniteGroup, Subgroup, cyclic, dihedral, direct_product, subgroup, symmetric
from .wreath import CycleUnion, FiniteAction, ShiftLine, WindowEscape, WreathElement, WreathProduct

__version__ = "0.1.0"

__all__ = ["FiniteGroup", "Subgroup", "cyclic", "dihedral", "direct_product", "subgroup", "symmetric",
           "CycleUnion", "FiniteAction", "ShiftLine", "WindowEscape", "WreathElement", "WreathProduct"]
