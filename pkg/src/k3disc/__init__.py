"""Exact arithmetic toolkit for even lattices and K3 discriminant conditions."""
