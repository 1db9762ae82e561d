"""Covering-number profiles of operator images, and the interpolation bound."""

from typing import NamedTuple

import numpy as np

from .._validation import check_eps, check_theta
from ..exceptions import InvariantViolation, PreconditionViolation
from ..seminet import SemimetricSpace, greedy_net
from .sampling import SamplerConfig, sample_ball

PROFILE_OFFSET, BOUND_OFFSET = 21, 22


class CompactnessProfile(NamedTuple):
    theta: float
    eps: tuple
    covering: tuple
    raw: tuple
    diameter: float
    sample_count: int
    seed: int

    def rows(self):
        """CSV-ready ``(theta, eps, covering_number, sample_count, seed)`` rows."""
        return [(self.theta, e, c, self.sample_count, self.seed) for e, c in zip(self.eps, self.covering)]


def pairwise_distances(norm, Y, chunk=64):
    """``D[i, j] = norm(Y[i] - Y[j])``, evaluated block by block."""
    m = len(Y)
    D = np.empty((m, m))
    for start in range(0, m, chunk):
        block = Y[start : start + chunk]
        diffs = (block[:, None, :] - Y[None, :, :]).reshape(-1, Y.shape[1])
        D[start : start + chunk] = norm.eval_rows(diffs).reshape(len(block), m)
    # symmetrise away rounding so the semimetric is exact
    return np.maximum(D, D.T)


def _grid(eps_grid):
    eps = [check_eps(e) for e in np.atleast_1d(eps_grid)]
    if not eps:
        raise ValueError("eps grid is empty")
    return eps


def monotone_covering(D, eps_grid):
    """Greedy covering sizes, and the same sizes made nonincreasing in eps.

    A greedy net is not monotone in eps; the reported value at each eps is
    the smallest greedy size over all grid values at most eps, which is
    still a valid covering size (an eps'-net is an eps-net for eps >= eps').
    """
    eps = _grid(eps_grid)
    space = SemimetricSpace(D, check=False)
    raw = [len(greedy_net(space, e)) for e in eps]
    order = np.argsort(eps, kind="stable")
    best, cover = np.inf, [0] * len(eps)
    for i in order:
        best = min(best, raw[i])
        cover[i] = int(best)
    for i, k in zip(order[:-1], order[1:]):
        if cover[k] > cover[i]:
            raise InvariantViolation("covering curve increases with eps")
    return cover, raw


def compactness_profile(T, theta, eps_grid, sampler=None):
    """Covering numbers of ``T`` applied to the unit sphere of the G theta-norm.

    Points are sampled on the sphere of ``[G0, G1]_theta`` (supported on the
    common mask), pushed through ``T`` and measured in ``[X0, X1]_theta``.
    """
    theta = check_theta(theta)
    sampler = SamplerConfig() if sampler is None else sampler
    Gt = T.G.theta_norm(theta)
    Xt = T.X.theta_norm(theta)
    g = sample_ball(Gt, sampler, PROFILE_OFFSET, support=Gt.mask)
    D = pairwise_distances(Xt, T.apply(g))
    cover, raw = monotone_covering(D, eps_grid)
    diameter = float(D.max()) if D.size else 0.0
    return CompactnessProfile(
        theta, tuple(_grid(eps_grid)), tuple(cover), tuple(raw), diameter, len(g), sampler.seed
    )


class InterpBound(NamedTuple):
    ratio: float
    bound: float


def interp_bound_check(T, theta, sampler=None, atol=1e-7):
    """``max ||T x||_theta / ||x||_theta`` over samples, against ``||T||_0^(1-t) ||T||_1^t``.

    Refused unless both endpoint norms are exact, since a lower bound on
    them would not bound anything.
    """
    theta = check_theta(theta)
    if not T.endpoints_exact:
        raise PreconditionViolation("interpolation bound needs exact endpoint norms")
    sampler = SamplerConfig() if sampler is None else sampler
    n0, n1 = T.endpoint_norm(0).value, T.endpoint_norm(1).value
    bound = n0 ** (1 - theta) * n1**theta
    Gt, Xt = T.G.theta_norm(theta), T.X.theta_norm(theta)
    x = sample_ball(Gt, sampler, BOUND_OFFSET, support=Gt.mask)
    ratio = float(np.max(Xt.eval_rows(T.apply(x)))) if len(x) else 0.0
    if ratio > bound + atol:
        raise InvariantViolation(f"interpolated norm {ratio!r} exceeds {bound!r}")
    return InterpBound(ratio, bound)
