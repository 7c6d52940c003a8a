"""Cayley graphs of block-Toeplitz 2-groups, Platonic graphs and their spectra."""

__version__ = "0.1.0"
