"""Thin wrapper around cvxpy/Clarabel: settings, status handling, caching."""

import logging
import warnings

import cvxpy as cp

from ..exceptions import SolverFailure

logger = logging.getLogger(__name__)

# Interior-point tolerance tiers, tightest first; every key is set explicitly
# on each attempt because cvxpy keeps solver options between calls.
TIERS = tuple(
    dict(
        solver=cp.CLARABEL,
        max_iter=1000,
        tol_gap_abs=tol,
        tol_gap_rel=tol,
        tol_feas=tol,
        tol_ktratio=1e-6,
    )
    for tol in (1e-10, 1e-9, 1e-8)
)


def solve(problem, what="program"):
    """Solve ``problem`` and return its optimal value, or raise SolverFailure."""
    for settings in TIERS:
        try:
            with warnings.catch_warnings():
                # inaccurate statuses are handled below by retrying looser tiers
                warnings.simplefilter("ignore", UserWarning)
                problem.solve(**settings)
        except cp.error.SolverError as exc:
            logger.debug("%s: solver error %s", what, exc)
            continue
        if problem.status == cp.OPTIMAL:
            return float(problem.value)
        logger.debug("%s: status %s", what, problem.status)
    value = problem.value
    bound = float(value) if value is not None and abs(value) < float("inf") else None
    raise SolverFailure(f"{what}: solver ended with status {problem.status!r}", bound=bound)


def masked(mask, x):
    """Expression equal to ``x`` on ``mask`` and 0 elsewhere."""
    if mask.all():
        return x
    return cp.multiply(mask.astype(float), x)
