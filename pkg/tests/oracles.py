"""Independent reference computations used to derive expected test values.

Nothing here imports latticelab: each oracle recomputes its quantity from
the definition by brute force, enumeration or an unrelated solver.
"""

import itertools

import numpy as np
from scipy.optimize import linprog


def wlp(f, p, w=None, mu=None, mask=None):
    """Weighted l^p norm straight from the formula, +inf off the mask."""
    f = np.abs(np.asarray(f, dtype=complex))
    n = f.size
    w = np.ones(n) if w is None else np.asarray(w, float)
    mu = np.ones(n) if mu is None else np.asarray(mu, float)
    mask = np.ones(n, bool) if mask is None else np.asarray(mask, bool)
    if np.any(f[~mask] > 0):
        return np.inf
    f, w, mu = f[mask], w[mask], mu[mask]
    if f.size == 0:
        return 0.0
    if p == np.inf:
        return float(np.max(f * w))
    return float(np.sum((f * w) ** p * mu) ** (1 / p))


def wlp_rows(F, p, w=None, mu=None):
    """``wlp`` applied to every row of ``F`` (full mask)."""
    F = np.abs(np.asarray(F, dtype=complex))
    n = F.shape[1]
    w = np.ones(n) if w is None else np.asarray(w, float)
    mu = np.ones(n) if mu is None else np.asarray(mu, float)
    if p == np.inf:
        return np.max(F * w, axis=1)
    return np.sum((F * w) ** p * mu, axis=1) ** (1 / p)


def grid_sum_norm(f, norm0, norm1, steps=401):
    """``inf ||f - t||_0 + ||t||_1`` over a grid of splits ``0 <= t <= f`` (f >= 0).

    ``norm0`` and ``norm1`` take a 2-d array and return one value per row.
    """
    f = np.asarray(f, float)
    axes = [np.linspace(0, fk, steps) for fk in f]
    T = np.stack([a.ravel() for a in np.meshgrid(*axes, indexing="ij")], axis=1)
    return float(np.min(norm0(f - T) + norm1(T)))


def grid_factorization_l1_linf(f, theta, steps=801, zooms=4):
    """Calderon norm of ``f >= 0`` (n = 2) over l^1 / l^inf with unit weights.

    Searches ``f0 = (a, 1 - a)`` on the l^1 sphere and ``f1 = (1, c)`` or
    ``(c, 1)`` on the l^inf sphere; the norm is the least ``lam`` with
    ``f <= lam f0^(1-theta) f1^theta``.  The grid is re-centred on the best
    cell ``zooms`` times.
    """
    f = np.asarray(f, float)
    best = np.inf
    for top in (0, 1):
        a_lo, a_hi, c_lo, c_hi = 1e-9, 1 - 1e-9, 1e-9, 1.0
        for _ in range(zooms + 1):
            a = np.linspace(a_lo, a_hi, steps)[:, None]
            c = np.linspace(c_lo, c_hi, steps)[None, :]
            f1 = (np.ones_like(c), c) if top == 0 else (c, np.ones_like(c))
            lam = np.maximum(
                f[0] / (a ** (1 - theta) * f1[0] ** theta),
                f[1] / ((1 - a) ** (1 - theta) * f1[1] ** theta),
            )
            i, j = np.unravel_index(np.argmin(lam), lam.shape)
            best = min(best, float(lam[i, j]))
            da, dc = (a_hi - a_lo) / steps * 4, (c_hi - c_lo) / steps * 4
            a0, c0 = a[i, 0], c[0, j]
            a_lo, a_hi = max(1e-12, a0 - da), min(1 - 1e-12, a0 + da)
            c_lo, c_hi = max(1e-12, c0 - dc), min(1.0, c0 + dc)
    return best


def lp_associate_l1(f, w, mu):
    """``max sum |f| g mu`` over ``sum g w mu <= 1, g >= 0`` by scipy's LP solver."""
    f, w, mu = (np.asarray(v, float) for v in (f, w, mu))
    res = linprog(-(np.abs(f) * mu), A_ub=[w * mu], b_ub=[1.0], bounds=[(0, None)] * f.size, method="highs")
    return -res.fun


def min_cover_size(d, eps):
    """Smallest number of closed eps-balls centred at points covering all points."""
    n = len(d)
    close = np.asarray(d) <= eps
    for k in range(1, n + 1):
        for centres in itertools.combinations(range(n), k):
            if close[list(centres)].any(axis=0).all():
                return k
    return n


def max_separated_size(d, r):
    """Largest subset with all pairwise distances > r."""
    n = len(d)
    d = np.asarray(d)
    for k in range(n, 0, -1):
        for sub in itertools.combinations(range(n), k):
            if all(d[i, j] > r for i, j in itertools.combinations(sub, 2)):
                return k
    return 0


def mesh_operator_norm_real(B, p, steps=241):
    """``max ||B x||_p / ||x||_p`` over a spherical-angle mesh of real unit vectors in R^3."""
    best = 0.0
    for phi in np.linspace(0, np.pi, steps):
        for psi in np.linspace(0, 2 * np.pi, 2 * steps):
            x = np.array([np.cos(phi), np.sin(phi) * np.cos(psi), np.sin(phi) * np.sin(psi)])
            best = max(best, np.sum(np.abs(B @ x) ** p) ** (1 / p) / np.sum(np.abs(x) ** p) ** (1 / p))
    return best
