"""The bilinear table ``h(g, z) = sum_k z_k (T g)_k mu_k`` and the bounds it obeys."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import InvariantViolation, PreconditionViolation
from ..lattice import Associate, Sum
from ..seminet import BilinearSystem, sup_distance_rows
from .sampling import SamplerConfig, dual_attaining, sample_ball

# sub-stream offsets, fixed so that sample sets never depend on call order
G_OFFSET, Z_OFFSET, DUAL_OFFSET = 11, 12, 13


@dataclass(frozen=True)
class AdjointSystem:
    """Sampled ``g`` rows, sampled ``z`` rows and ``h[i, j] = h(g_i, z_j)``."""

    g: np.ndarray
    z: np.ndarray
    h: np.ndarray

    def as_bilinear(self):
        return BilinearSystem(self.h)


def pairing_table(T, g, z):
    """``h[i, j] = sum_k z[j, k] (T g_i)_k mu_k`` (bilinear, no conjugation)."""
    Tg = T.apply(np.atleast_2d(g))
    return (Tg * T.X.space.mu) @ np.atleast_2d(z).T


def _g_norm(T, ball, theta):
    if ball in (0, 1):
        return T.G[ball]
    if ball == "theta":
        return T.G.theta_norm(theta).as_norm()
    if ball == "cap":
        return T.G.intersection
    raise ValueError(f"unknown G ball {ball!r}")


def _z_norm(T, ball, theta):
    if ball in (0, 1):
        return Associate(T.X[ball])
    if ball == "theta":
        return T.X.associate().theta_norm(theta).as_norm()
    if ball == "sum":
        return Sum(Associate(T.X[0]), Associate(T.X[1]))
    raise ValueError(f"unknown associate ball {ball!r}")


def build_adjoint_system(T, g_ball=0, z_ball=0, sampler=None, theta=None, dual_fraction=0.1):
    """Sample both balls and tabulate ``h``.

    ``g_ball`` is 0, 1, ``"cap"`` or ``"theta"``; g-points are always
    supported on the common mask of ``G0`` and ``G1``.  ``z_ball`` is 0, 1,
    ``"sum"`` or ``"theta"``.  When ``z_ball`` is an endpoint with a closed
    form, a share of the z-points are the dual-attaining vectors of
    ``T g`` for the first sampled ``g``.
    """
    sampler = SamplerConfig() if sampler is None else sampler
    Gn, Zn = _g_norm(T, g_ball, theta), _z_norm(T, z_ball, theta)
    joint = T.G.X0.mask & T.G.X1.mask
    g = sample_ball(Gn, sampler, G_OFFSET, support=joint & Gn.mask)
    z = sample_ball(Zn, sampler, Z_OFFSET)
    if z_ball in (0, 1) and dual_fraction > 0 and len(g):
        Xj = T.X[z_ball]
        k = max(1, int(sampler.count * dual_fraction))
        extra = [dual_attaining(Xj, y) for y in T.apply(g[:k])]
        extra = [e for e in extra if e is not None]
        if extra:
            z = np.vstack([z[: len(z) - len(extra)], extra]) if len(z) > len(extra) else np.array(extra)
    return AdjointSystem(g, z, pairing_table(T, g, z))


def _assert_slack(slack, atol, what):
    worst = float(np.min(slack)) if np.size(slack) else 0.0
    if worst < -atol:
        raise InvariantViolation(f"{what} violated: slack {worst:.3e}")
    return worst


def ercv_check(T, g, z, j, atol=1e-9):
    """``||z||_{X_j'} ||T g||_{X_j} - |h(g, z)|`` for one pair; asserts >= -atol."""
    Xj = T.X[j]
    nz = Associate(Xj)(z)
    ny = Xj(T.apply(np.asarray(g)))
    if not (np.isfinite(nz) and np.isfinite(ny)):
        raise PreconditionViolation("ercv needs finite norms")
    h = float(np.abs(pairing_table(T, g, z)[0, 0]))
    return _assert_slack(nz * ny - h, atol, "ercv bound")


def ercv_slacks(T, system, j, atol=1e-9):
    """The ercv slack for every sampled pair; asserts the minimum >= -atol."""
    Xj = T.X[j]
    nz = Associate(Xj).eval_rows(system.z)
    ny = Xj.eval_rows(T.apply(system.g))
    slack = np.outer(ny, nz) - np.abs(system.h)
    _assert_slack(slack, atol, "ercv bound")
    return slack


def tcfm_slacks(T, system, atol=1e-9):
    """``||z||_{X0'+X1'} ||g||_{G0 n G1} - |h(g, z)|`` over all sampled pairs.

    Only meaningful for a normalised operator whose endpoint norms are
    exact; anything else is refused.
    """
    if not T.normalized:
        raise PreconditionViolation("tcfm needs a normalised operator")
    if not T.endpoints_exact:
        raise PreconditionViolation("tcfm needs exact endpoint norms; only lower bounds are known")
    nz = T.X.associate().sum.eval_rows(system.z)
    ng = T.G.intersection.eval_rows(system.g)
    slack = np.outer(ng, nz) - np.abs(system.h)
    _assert_slack(slack, atol, "tcfm bound")
    return slack


def adjoint_contraction(T, system, j, atol=1e-9):
    """``||z||_{X_j'} - sup_g |h(g, z)| / ||g||_{G_j}`` for every sampled ``z``."""
    if not (T.normalized and T.endpoints_exact):
        raise PreconditionViolation("adjoint contraction needs a normalised operator with exact endpoint norms")
    ng = T.G[j].eval_rows(system.g)
    ok = np.isfinite(ng) & (ng > 0)
    ratios = np.abs(system.h[ok]) / ng[ok, None]
    sup = ratios.max(axis=0) if ratios.size else np.zeros(len(system.z))
    slack = Associate(T.X[j]).eval_rows(system.z) - sup
    _assert_slack(slack, atol, "adjoint contraction")
    return slack


def domination_excess(T, system, rtol=1e-12):
    """Largest ``d_A(g_m, g_n) - ||T g_m - T g_n||_{X0}`` over sampled pairs.

    The z-points must come from the unit ball of ``X0'``, so that ``d_A``
    is a sup over a subset of the norming set.  Rounding is the only source
    of a positive excess; anything above ``rtol`` times the scale raises.
    """
    dA = sup_distance_rows(system.h)
    Y = T.apply(system.g)
    X0 = T.X[0]
    m = len(Y)
    dX = np.empty((m, m))
    for i in range(m):
        dX[i] = X0.eval_rows(Y[i] - Y)
    excess = dA - dX
    scale = max(1.0, float(np.max(dX)) if m else 1.0)
    worst = float(np.max(excess)) if m else 0.0
    if worst > rtol * scale:
        raise InvariantViolation(f"d_A exceeds the X0 distance by {worst:.3e}")
    return worst
