"""Exact values, exact-formula evaluation and inequality certificates for p2(n),
the number of partitions of n with no two consecutive integers as parts."""

__version__ = "0.1.0"
