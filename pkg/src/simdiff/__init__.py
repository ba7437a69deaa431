"""Exact simplicial models for differential cohomology.

Finite simplicial sets with degeneracy bookkeeping, normalized cochains over
exact coefficients, Eilenberg-MacLane mapping groupoids with algorithmic horn
fillers, a lifted Chern character with integration witnesses, and the
resulting hat-groups with their exactness certificates.
"""

__version__ = "0.1.0"
