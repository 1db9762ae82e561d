"""Finite measure spaces, lattice norms and associate norms."""

from .associate import associate_norm, associate_of, lolu_condition_check, second_associate_check
from .norms import (
    Associate,
    CalderonProduct,
    Intersection,
    LatticeNorm,
    Restricted,
    Sum,
    WeightedLp,
    conjugate_exponent,
    norm_eval,
    support,
)
from .space import FiniteMeasureSpace

__all__ = [
    "Associate",
    "CalderonProduct",
    "FiniteMeasureSpace",
    "Intersection",
    "LatticeNorm",
    "Restricted",
    "Sum",
    "WeightedLp",
    "associate_norm",
    "associate_of",
    "conjugate_exponent",
    "lolu_condition_check",
    "norm_eval",
    "second_associate_check",
    "support",
]
