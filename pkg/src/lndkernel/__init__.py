"""Exact computations around a locally nilpotent derivation with non-finitely
generated kernel."""

__version__ = "0.1.0"
