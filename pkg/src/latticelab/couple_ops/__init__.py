"""Operators between couples, the adjoint bilinear table, covering profiles."""

from .adjoint import (
    AdjointSystem,
    adjoint_contraction,
    build_adjoint_system,
    domination_excess,
    ercv_check,
    ercv_slacks,
    pairing_table,
    tcfm_slacks,
)
from .operators import EndpointNorm, OperatorOnCouple, endpoint_norm
from .profile import (
    CompactnessProfile,
    InterpBound,
    compactness_profile,
    interp_bound_check,
    monotone_covering,
    pairwise_distances,
)
from .restrict import RestrictExtend, restrict_extend, support_equality_check
from .sampling import SamplerConfig, dual_attaining, sample_ball, sample_sphere

__all__ = [
    "AdjointSystem",
    "CompactnessProfile",
    "EndpointNorm",
    "InterpBound",
    "OperatorOnCouple",
    "RestrictExtend",
    "SamplerConfig",
    "adjoint_contraction",
    "build_adjoint_system",
    "compactness_profile",
    "domination_excess",
    "dual_attaining",
    "endpoint_norm",
    "ercv_check",
    "ercv_slacks",
    "interp_bound_check",
    "monotone_covering",
    "pairing_table",
    "pairwise_distances",
    "restrict_extend",
    "sample_ball",
    "sample_sphere",
    "support_equality_check",
    "tcfm_slacks",
]
