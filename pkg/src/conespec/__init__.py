"""Exact cone spectra, degree profiles, exponential-polynomial growth and generated cycles."""

__version__ = "0.1.0"
