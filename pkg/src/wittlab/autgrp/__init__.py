"""The automorphism group G of O_n."""

from .automorphism import (
    Automorphism,
    AutomorphismError,
    ConstantTermPresent,
    JacobianInMaxIdeal,
    aut_act_der,
    aut_apply,
    aut_compose,
    aut_invert,
    aut_make,
    aut_random,
    chi0,
    cocharacter,
)

__all__ = [
    "Automorphism",
    "AutomorphismError",
    "ConstantTermPresent",
    "JacobianInMaxIdeal",
    "aut_act_der",
    "aut_apply",
    "aut_compose",
    "aut_invert",
    "aut_make",
    "aut_random",
    "chi0",
    "cocharacter",
]
