"""Partial difference sets with Denniston parameters for odd primes."""

from .finite_field import FieldElem, FieldTower, build_tower
from .pds import GroupElem, GroupSet, PdsParams, construct_D, denniston_params, dual_params, dual_set, x_params
from .quadform import ElementSet, construct_X_quadform

__all__ = [
    "ElementSet",
    "FieldElem",
    "FieldTower",
    "GroupElem",
    "GroupSet",
    "PdsParams",
    "build_tower",
    "construct_D",
    "construct_X_quadform",
    "denniston_params",
    "dual_params",
    "dual_set",
    "x_params",
]
