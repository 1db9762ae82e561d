"""Finite-dimensional Banach lattice norms, Kothe duality, Calderon products,
and epsilon-net experiments for operators between lattice couples."""

from .calderon import (
    CoupleSpec,
    DualPairing,
    ThetaNorm,
    as_weighted_lp,
    calderon_closed_form,
    calderon_norm,
    lozanovskii_check,
    relative_error,
    theta_dual_pairing_sup,
)
from .exceptions import (
    DiagonalizationError,
    InvariantViolation,
    LatticeLabError,
    PreconditionViolation,
    SolverFailure,
)
from .lattice import (
    Associate,
    CalderonProduct,
    FiniteMeasureSpace,
    Intersection,
    LatticeNorm,
    Restricted,
    Sum,
    WeightedLp,
    associate_norm,
    norm_eval,
    support,
)

__version__ = "0.1.0"

__all__ = [
    "Associate",
    "CalderonProduct",
    "CoupleSpec",
    "DiagonalizationError",
    "DualPairing",
    "FiniteMeasureSpace",
    "Intersection",
    "InvariantViolation",
    "LatticeLabError",
    "LatticeNorm",
    "PreconditionViolation",
    "Restricted",
    "SolverFailure",
    "Sum",
    "ThetaNorm",
    "WeightedLp",
    "as_weighted_lp",
    "associate_norm",
    "calderon_closed_form",
    "calderon_norm",
    "lozanovskii_check",
    "norm_eval",
    "relative_error",
    "support",
    "theta_dual_pairing_sup",
]
