"""Laboratório numérico do líquido de spins de Floquet no modelo de Kitaev."""

__version__ = "0.1.0"
