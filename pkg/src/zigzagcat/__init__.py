"""Zigzag categories over pluggable bases: colimit-based contraction and
expansion moves for n-diagrams."""

__version__ = "0.1.0"
