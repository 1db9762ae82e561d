"""Deterministic point sets on unit spheres of lattice norms."""

from dataclasses import dataclass

import numpy as np

from ..calderon import as_weighted_lp
from ..rng import stream

PHASES = np.array([1.0, -1.0, 1j, -1j])


@dataclass(frozen=True)
class SamplerConfig:
    """How many points to draw and from which seed.

    ``basis`` includes phased basis vectors first; ``sparse_fraction`` of the
    random directions are restricted to a random subset of coordinates so
    that faces of the ball are also visited.
    """

    count: int = 500
    seed: int = 0
    basis: bool = True
    complex_values: bool = True
    sparse_fraction: float = 0.25

    def __post_init__(self):
        if int(self.count) < 1:
            raise ValueError(f"sample count must be positive (got {self.count})")
        if not 0 <= self.sparse_fraction <= 1:
            raise ValueError("sparse_fraction must lie in [0, 1]")


def _normalize_rows(norm, V):
    vals = norm.eval_rows(V)
    keep = np.isfinite(vals) & (vals > 0)
    return V[keep] / vals[keep, None]


def sample_sphere(norm, count, seed, offset=0, *, basis=True, complex_values=True,
                  sparse_fraction=0.25, support=None):
    """``count`` points with ``norm(x) == 1``, supported on ``support``.

    ``support`` defaults to the norm's mask.  Rows come in a fixed order:
    phased basis vectors, then dense and sparse random directions.
    """
    n = norm.n
    idx = np.flatnonzero(norm.mask if support is None else np.asarray(support, bool))
    if count < 1:
        raise ValueError("sample count must be positive")
    if idx.size == 0:
        return np.zeros((0, n), dtype=complex)
    rows = []
    if basis:
        phases = PHASES if complex_values else PHASES[:2]
        for k in idx:
            for ph in phases:
                v = np.zeros(n, dtype=complex)
                v[k] = ph
                rows.append(v)
    rows = rows[:count]
    rng = stream(seed, offset)
    need = count - len(rows)
    if need > 0:
        R = np.zeros((need, n), dtype=complex)
        R[:, idx] = rng.standard_normal((need, idx.size))
        if complex_values:
            R[:, idx] += 1j * rng.standard_normal((need, idx.size))
        n_sparse = int(round(need * sparse_fraction))
        for r in range(need - n_sparse, need):
            drop = idx[rng.random(idx.size) < 0.5]
            if drop.size < idx.size:
                R[r, drop] = 0
        # a row of zeros has no direction; give it a single coordinate instead
        dead = ~np.any(R != 0, axis=1)
        R[dead, idx[0]] = 1.0
        rows.extend(R)
    V = np.array(rows, dtype=complex)
    return _normalize_rows(norm, V)


def sample_ball(norm, config, offset=0, support=None):
    return sample_sphere(
        norm, config.count, config.seed, offset, basis=config.basis,
        complex_values=config.complex_values, sparse_fraction=config.sparse_fraction, support=support,
    )


def dual_attaining(X, y):
    """``z`` with ``||z||_{X'} = 1`` and ``sum z y mu = ||y||_X``.

    Known in closed form for weighted l^p norms; returns None otherwise or
    when ``y`` has zero or infinite norm.
    """
    Xlp = as_weighted_lp(X)
    if Xlp is None:
        return None
    y = np.asarray(y, dtype=complex)
    ny = Xlp(y)
    if not np.isfinite(ny) or ny == 0:
        return None
    mask, w, mu, p = Xlp.mask, Xlp.w, Xlp.space.mu, Xlp.p
    a = np.abs(y)
    phase = np.where(a > 0, np.conj(y) / np.where(a > 0, a, 1), 0)
    z = np.zeros_like(y)
    if p == 1:
        z[mask] = np.where(a[mask] > 0, phase[mask], 1.0) * w[mask]
    elif p == np.inf:
        k = int(np.argmax(np.where(mask, a * w, -1)))
        z[k] = phase[k] * w[k] / mu[k]
    else:
        z[mask] = phase[mask] * a[mask] ** (p - 1) * w[mask] ** p / ny ** (p - 1)
    return z
