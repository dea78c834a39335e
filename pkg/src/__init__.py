"""Exact computations for colon ideals of (x^d1, y^d2) and the weak Lefschetz property."""
