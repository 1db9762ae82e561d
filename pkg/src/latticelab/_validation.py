"""Input validation helpers in the spirit of ``sklearn.utils.validation``."""

import numbers

import numpy as np


def check_p(p):
    """Return ``p`` as a float in [1, inf]; accepts the string ``"inf"``."""
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "+inf"):
            return np.inf
        raise ValueError(f"invalid exponent {p!r}")
    if not isinstance(p, numbers.Real) or np.isnan(p):
        raise ValueError(f"invalid exponent {p!r}")
    p = float(p)
    if p < 1:
        raise ValueError(f"p < 1 is not a norm exponent (got p={p})")
    return p


def check_positive_vector(values, n=None, name="weights"):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-d sequence")
    if n is not None and arr.size != n:
        raise ValueError(f"{name} has length {arr.size}, expected {n}")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError(f"{name} must be finite and strictly positive")
    return arr


def check_mask(mask, n):
    """Normalise a mask given as index list, boolean array or None (full)."""
    if mask is None:
        return np.ones(n, dtype=bool)
    arr = np.asarray(mask)
    if arr.dtype == bool:
        if arr.shape != (n,):
            raise ValueError(f"boolean mask has shape {arr.shape}, expected ({n},)")
        return arr.copy()
    out = np.zeros(n, dtype=bool)
    idx = np.asarray(arr, dtype=int).ravel()
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ValueError(f"mask indices out of range for n={n}")
    out[idx] = True
    return out


def check_vector(f, n):
    """Return ``f`` as a complex 1-d array of length ``n``."""
    arr = np.asarray(f)
    if arr.ndim != 1:
        raise ValueError("lattice vectors must be 1-d")
    if arr.shape[0] != n:
        raise ValueError(f"dimension mismatch: vector has length {arr.shape[0]}, space has n={n}")
    arr = arr.astype(complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("lattice vectors must have finite entries")
    return arr


def check_rows(F, n):
    arr = np.asarray(F)
    if arr.ndim != 2 or arr.shape[1] != n:
        raise ValueError(f"expected an array of shape (m, {n}), got {arr.shape}")
    return arr.astype(complex)


def check_theta(theta):
    theta = float(theta)
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    return theta


def check_eps(eps, name="eps"):
    eps = float(eps)
    if not eps > 0 or not np.isfinite(eps):
        raise ValueError(f"{name} must be a positive finite number, got {eps}")
    return eps


def check_distance_matrix(d, atol=1e-12):
    """Validate a square semimetric distance table (symmetric, zero diagonal, >= 0)."""
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
        raise ValueError("distance table must be a non-empty square matrix")
    if not np.all(np.isfinite(d)):
        raise ValueError("distance table must be finite")
    if np.any(d < -atol):
        raise ValueError("distances must be nonnegative")
    if np.any(np.abs(np.diag(d)) > atol):
        raise ValueError("distance table must have a zero diagonal")
    if not np.allclose(d, d.T, rtol=0, atol=atol):
        raise ValueError("distance table must be symmetric")
    return d
