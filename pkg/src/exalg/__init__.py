"""Exact kernels for octonion / Albert algebra constructions and their
commutative companion algebras, over the Gaussian rationals.

All arithmetic is exact: scalars are Gaussian rationals backed by gmpy2
rationals, and every claimed identity is checked by equality, never by
tolerance.
"""

from .scalar import Scalar, scalar_to_str, scalar_from_str

__all__ = ["Scalar", "scalar_to_str", "scalar_from_str"]
