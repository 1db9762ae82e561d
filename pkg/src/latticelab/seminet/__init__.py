"""Semimetric spaces from bilinear tables, nets, and sequence extraction."""

from .estimator import EpsilonNet
from .nets import covering_curve, covering_number, exact_covering_number, greedy_net, separated_set
from .semimetric import BilinearSystem, SemimetricSpace, induce_semimetrics, sup_distance_rows
from .sequences import CauchyExtraction, cauchy_subsequence, diag_subsequence, oscillations, tail_diameters
from .transfer import NetApprox, net_audit, net_dB_approx

__all__ = [
    "BilinearSystem",
    "CauchyExtraction",
    "EpsilonNet",
    "NetApprox",
    "SemimetricSpace",
    "cauchy_subsequence",
    "covering_curve",
    "covering_number",
    "diag_subsequence",
    "exact_covering_number",
    "greedy_net",
    "induce_semimetrics",
    "net_audit",
    "net_dB_approx",
    "oscillations",
    "separated_set",
    "sup_distance_rows",
    "tail_diameters",
]
