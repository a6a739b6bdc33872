"""Certified lower and upper bounds for the Bohr radius of the unit polydisc."""

__version__ = "0.1.0"
