"""Frobenius splitting and global F-regularity of canonical del Pezzo surfaces."""

__version__ = "0.1.0"
