"""Braid and unknot DGAs from Legendrian contact homology, with a numerical Morse model."""

__version__ = "0.1.0"
