"""Exact computations on the 27 lines of a real cubic surface, the Weyl group
W(E6), and positive geometry of the moduli space Y(3,6)."""

__version__ = "0.1.0"
