"""Noncrossing partitions of types A, B and D.

Bijections between partitions and parenthesizations, multichain counting
with rank-jump / type / index / annular filters, and closed-form
evaluators checked against brute force.
"""

__version__ = "0.1.0"
