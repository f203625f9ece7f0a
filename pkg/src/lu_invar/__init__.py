"""LU invariant fingerprints for bipartite and tripartite qudit states."""

__version__ = "1.0.0"
__author__ = "LU Invariants Team"
