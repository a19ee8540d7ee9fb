"""Exact knot Floer complex calculator over F2[U, V]."""

__version__ = "0.1.0"
