"""Skew Hadamard difference sets over GF(3^m) from Ree-Tits permutation polynomials."""

from .designs import ElementSet, dy_set, family_set, is_difference_set, is_skew_hadamard, paley_set, rt_set
from .eisenstein import EisensteinInt
from .field import GF, FieldError, FieldSpec, gf3, make_field
from .invariants import TripleProfile, triple_profile

__all__ = [
    "GF", "FieldError", "FieldSpec", "gf3", "make_field",
    "EisensteinInt",
    "ElementSet", "paley_set", "dy_set", "rt_set", "family_set", "is_difference_set", "is_skew_hadamard",
    "TripleProfile", "triple_profile",
]

__version__ = "0.1.0"
