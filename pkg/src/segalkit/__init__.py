"""Executable combinatorics of complete Segal spaces at desk scale."""

__version__ = "0.1.0"
