"""Exact evaluation of SL(2) supercuspidal character bounds over p-adic fields."""

__version__ = "0.1.0"
