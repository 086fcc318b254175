"""Exact-arithmetic toolkit for the mirror of the two-cubic Calabi-Yau family.

The package computes the Picard-Fuchs operator of the (3,3) complete
intersection's mirror by multi-modular Jacobian-module reduction, derives
Yukawa couplings and rational-curve predictions for five complete-intersection
families, and cross-checks the degree-1 counts with Schubert calculus and an
orbifold Euler-characteristic computation.

Everything is exact: prime-field residues, arbitrary-precision rationals and
integers.  No floating point is used anywhere.
"""

__version__ = "0.1.0"
