"""Exact computations in the Witt algebra W_n = Der(O_n) over finite fields."""

__version__ = "0.1.0"
