"""Recovering ``d_B`` from a net of ``(A, d_A)``."""

from typing import NamedTuple

import numpy as np

from ..exceptions import InvariantViolation, PreconditionViolation
from .semimetric import BilinearSystem, sup_distance_rows


class NetApprox(NamedTuple):
    approx: float  # max over the net of |h(y, b1) - h(y, b2)|
    exact: float  # d_B(b1, b2)
    upper: float  # approx + 2 eps


def _check_net(s, net, eps):
    dist = sup_distance_rows(s.h, rows=net)  # (len(net), m)
    gap = dist.min(axis=0)
    bad = np.flatnonzero(gap > eps)
    if bad.size:
        a = int(bad[0])
        raise PreconditionViolation(
            f"point {a} of A is at distance {gap[a]!r} > eps={eps!r} from the net", witness=a
        )


def net_dB_approx(s, net, b1, b2, eps, slack=1e-12):
    """Approximate ``d_B(b1, b2)`` by a sup over the net rows only.

    The sandwich ``approx <= d_B <= approx + 2 eps`` holds whenever ``net``
    is an ``eps``-net of ``(A, d_A)``; both sides are asserted.
    """
    if not isinstance(s, BilinearSystem):
        s = BilinearSystem(s)
    net = np.asarray(net, dtype=int)
    if net.size == 0:
        raise PreconditionViolation("net is empty")
    eps = float(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    _check_net(s, net, eps)
    col = np.abs(s.h[:, b1] - s.h[:, b2])
    approx = float(col[net].max())
    exact = float(col.max())
    upper = approx + 2 * eps
    if exact < approx - slack or exact > upper + slack:
        raise InvariantViolation(f"net sandwich fails: {approx} <= {exact} <= {upper}")
    return NetApprox(approx, exact, upper)


def net_audit(s, net, eps):
    """Check the sandwich on every pair of ``B`` at once.

    Returns ``(min_lower_slack, max_error)`` where the lower slack is
    ``d_B - approx`` (never negative) and the error is the same quantity,
    whose maximum must not exceed ``2 eps``.
    """
    if not isinstance(s, BilinearSystem):
        s = BilinearSystem(s)
    net = np.asarray(net, dtype=int)
    _check_net(s, net, float(eps))
    exact = s.d_B()
    approx = sup_distance_rows(s.h[net].T)
    diff = exact - approx
    return float(diff.min()), float(diff.max())
