"""Schur multiplier bounds for finite p-groups given by pc presentations."""

__version__ = "0.1.0"
