"""Exact homological computations for Harish-Chandra pairs.

Everything is done over the Gaussian rationals Q(i); there is no floating
point anywhere in the package.
"""

from .scalars import Scalar
from .linalg import Matrix

__all__ = ["Scalar", "Matrix"]
__version__ = "0.1.0"
