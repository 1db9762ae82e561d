"""Restriction to a sub-support, zero-fill extension, and the support identity."""

from typing import NamedTuple

import numpy as np

from .._validation import check_mask, check_theta
from ..exceptions import InvariantViolation, PreconditionViolation
from ..lattice import Restricted, WeightedLp, norm_eval


class RestrictExtend(NamedTuple):
    Y: object
    E: np.ndarray
    R: np.ndarray


def restrict_extend(X, mask):
    """The norm ``Y`` of ``X`` on ``mask``, with extension ``E`` and restriction ``R``.

    ``E`` zero-fills and ``R`` zeroes coordinates off ``mask``; on an
    ``n``-point space both are the 0/1 diagonal of ``mask``, so
    ``||E y||_X = ||y||_Y`` and ``E R f = f`` for ``f`` supported in ``mask``.
    """
    mask = check_mask(mask, X.n)
    if np.any(mask & ~X.mask):
        bad = sorted(int(k) for k in np.flatnonzero(mask & ~X.mask))
        raise PreconditionViolation("restriction mask is not contained in mask(X)", witness=bad)
    if isinstance(X, WeightedLp):
        Y = X if np.array_equal(mask, X.mask) else WeightedLp(X.space, X.p, X.w, mask)
    else:
        Y = X if np.array_equal(mask, X.mask) else Restricted(X, mask)
    P = np.diag(mask.astype(float))
    E, R = P.copy(), P.copy()
    for M in (E, R):
        M.setflags(write=False)
    # norm one on each basis vector of the new support, by construction
    for k in np.flatnonzero(mask):
        e = np.zeros(X.n)
        e[k] = 1.0
        if norm_eval(X, E @ e) != norm_eval(Y, e) or norm_eval(Y, R @ e) != norm_eval(X, e):
            raise InvariantViolation(f"restriction is not isometric at atom {k}")
    return RestrictExtend(Y, E, R)


def support_equality_check(c, theta, numeric=False):
    """Whether ``mask(X0 n X1)`` equals the mask of the theta-interpolation norm.

    With ``numeric`` the identity is also checked by evaluating the
    interpolation norm of each atom: finite exactly on the common mask.
    """
    theta = check_theta(theta)
    cap = c.intersection.mask
    same = bool(np.array_equal(cap, c.product(theta).mask))
    if numeric and same:
        tn = c.theta_norm(theta)
        for k in range(c.n):
            e = np.zeros(c.n)
            e[k] = 1.0
            if bool(np.isfinite(tn(e))) != bool(cap[k]):
                return False
    return same
