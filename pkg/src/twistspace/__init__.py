"""Twist spaces of real structures over trivalent graphs, and combinatorial patchworking."""

__version__ = "0.1.0"
