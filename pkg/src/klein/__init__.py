"""Exact RO(C2 x Sigma2)-graded Bredon cohomology of a point over Z/2.

Dimensions, canonical bases and products of the Klein four-group point
ring, computed three mutually cross-checking ways (chain-level homology,
closed-form Poincare series, generator enumeration), together with the
derived spaces E, E-tilde, B and the Bredon motivic cohomology of R.
"""

from .grading import Degree, cone_of, degree_of_generator
from .series import poincare_series, window_coefficient
from .oracle import homology_dim, kernel_basis, cokernel_basis, chain_basis
from .basis import canonical_basis, coset_reduce, Label
from .ring import Element, ProductOutcome, multiply, parse, is_nilpotent
from .spaces import (
    MackeyLevel,
    dim_B,
    dim_E,
    dim_Etilde,
    mackey_dim,
    motivic_dim,
    nc_basis,
    restrict,
    split_check,
)

__all__ = [
    "Degree",
    "Element",
    "Label",
    "MackeyLevel",
    "ProductOutcome",
    "canonical_basis",
    "chain_basis",
    "cokernel_basis",
    "cone_of",
    "coset_reduce",
    "degree_of_generator",
    "dim_B",
    "dim_E",
    "dim_Etilde",
    "homology_dim",
    "is_nilpotent",
    "kernel_basis",
    "mackey_dim",
    "motivic_dim",
    "multiply",
    "nc_basis",
    "parse",
    "poincare_series",
    "restrict",
    "split_check",
    "window_coefficient",
]

__version__ = "0.1.0"
