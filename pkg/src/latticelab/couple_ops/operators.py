"""Matrices acting between lattice couples, and their endpoint norms."""

from typing import NamedTuple

import numpy as np
from scipy import optimize

from ..calderon import CoupleSpec, as_weighted_lp
from ..lattice import conjugate_exponent
from ..rng import stream


class EndpointNorm(NamedTuple):
    value: float
    exact: bool


class OperatorOnCouple:
    """A complex matrix ``T`` mapping vectors on ``G``'s space to ``X``'s space."""

    def __init__(self, matrix, G, X):
        if not isinstance(G, CoupleSpec) or not isinstance(X, CoupleSpec):
            raise TypeError("G and X must be CoupleSpec instances")
        M = np.atleast_2d(np.asarray(matrix)).astype(complex)
        if M.shape != (X.n, G.n):
            raise ValueError(f"matrix has shape {M.shape}, expected ({X.n}, {G.n})")
        M.setflags(write=False)
        self.matrix = M
        self.G, self.X = G, X
        self._norms = {}
        self.normalized = False

    @classmethod
    def diagonal(cls, sigma, G, X):
        return cls(np.diag(np.asarray(sigma)), G, X)

    def __repr__(self):
        return f"OperatorOnCouple(shape={self.matrix.shape}, normalized={self.normalized})"

    @property
    def is_diagonal(self):
        M = self.matrix
        return M.shape[0] == M.shape[1] and np.count_nonzero(M - np.diag(np.diag(M))) == 0

    def apply(self, g):
        """``T g`` for a vector, or row-wise for a stack of vectors."""
        g = np.asarray(g)
        return g @ self.matrix.T if g.ndim == 2 else self.matrix @ g

    def endpoint_norm(self, j):
        if j not in self._norms:
            self._norms[j] = endpoint_norm(self, j)
        return self._norms[j]

    @property
    def endpoints_exact(self):
        return self.endpoint_norm(0).exact and self.endpoint_norm(1).exact

    def normalize(self):
        """Copy scaled so that ``max_j ||T||_{G_j -> X_j}`` is 1.

        The scale uses the estimates from ``endpoint_norm``; when those are
        only lower bounds the result is flagged by ``endpoints_exact``.
        """
        n0, n1 = self.endpoint_norm(0), self.endpoint_norm(1)
        top = max(n0.value, n1.value)
        if not np.isfinite(top):
            raise ValueError("cannot normalise an operator with an infinite endpoint norm")
        scale = 1.0 / top if top > 0 else 1.0
        out = OperatorOnCouple(self.matrix * scale, self.G, self.X)
        out._norms = {0: EndpointNorm(n0.value * scale, n0.exact), 1: EndpointNorm(n1.value * scale, n1.exact)}
        out.normalized = True
        return out


def _weighted_block(T, Gj, Xj):
    """Plain-norm matrix ``diag(cX) T diag(1/cG)`` on the masks, or inf if mass leaks."""
    cg = np.flatnonzero(Gj.mask)
    rx = np.flatnonzero(Xj.mask)
    M = T.matrix
    leak = np.abs(M[np.ix_(~Xj.mask, Gj.mask)]) > 0
    if leak.any():
        return None
    B = M[np.ix_(rx, cg)] * Xj._coef[rx][:, None] / Gj._coef[cg][None, :]
    return B


def _plain_norm(v, p):
    v = np.abs(v)
    if v.size == 0:
        return 0.0
    if p == np.inf:
        return float(v.max())
    return float(np.sum(v**p) ** (1.0 / p))


def endpoint_norm(T, j, samples=2000, seed=0):
    """``||T||_{G_j -> X_j}`` as ``(value, exact)``.

    Exact closed forms cover weighted l^p endpoints in these cases: equal
    exponents and at most one entry per row and column (diagonal ``T``);
    ``p = q`` in {1, 2, inf} (column sums, top
    singular value, row sums); source exponent 1 (largest column norm);
    target exponent inf (largest dual row norm).  Otherwise the value is a
    lower bound from phased basis vectors, random directions and a local
    ascent from the best of them.
    """
    Gj, Xj = as_weighted_lp(T.G[j]), as_weighted_lp(T.X[j])
    if Gj is not None and Xj is not None:
        B = _weighted_block(T, Gj, Xj)
        if B is None:
            return EndpointNorm(np.inf, True)
        if B.size == 0:
            return EndpointNorm(0.0, True)
        p, q = Gj.p, Xj.p
        nz = np.abs(B) > 0
        if p == q and nz.sum(axis=0).max() <= 1 and nz.sum(axis=1).max() <= 1:
            # at most one entry per row and column: a scaled partial permutation
            return EndpointNorm(float(np.abs(B).max()), True)
        if p == 1:
            return EndpointNorm(max(_plain_norm(B[:, k], q) for k in range(B.shape[1])), True)
        if q == np.inf:
            pc = conjugate_exponent(p)
            return EndpointNorm(max(_plain_norm(B[r], pc) for r in range(B.shape[0])), True)
        if p == q == 2:
            return EndpointNorm(float(np.linalg.svd(B, compute_uv=False)[0]), True)
        return EndpointNorm(_plain_lower_bound(B, p, q, samples, seed), False)
    return EndpointNorm(_sampled_lower_bound(T, j, samples, seed), False)


def _plain_lower_bound(B, p, q, samples, seed):
    rng = stream(seed, 101)
    m, n = B.shape
    basis = np.eye(n, dtype=complex)
    V = rng.normal(size=(samples, n)) + 1j * rng.normal(size=(samples, n))
    V = np.vstack([basis, V])

    def ratio(v):
        den = _plain_norm(v, p)
        return _plain_norm(B @ v, q) / den if den > 0 else 0.0

    scores = np.array([ratio(v) for v in V])
    best = float(scores.max())
    for idx in np.argsort(scores)[-3:]:
        x0 = np.concatenate([V[idx].real, V[idx].imag])
        res = optimize.minimize(
            lambda x: -ratio(x[:n] + 1j * x[n:]), x0, method="Nelder-Mead",
            options=dict(maxiter=4000, xatol=1e-10, fatol=1e-12),
        )
        best = max(best, -float(res.fun))
    return best


def _sampled_lower_bound(T, j, samples, seed):
    from .sampling import sample_sphere

    G, X = T.G[j], T.X[j]
    V = sample_sphere(G, samples, seed, offset=102 + j)
    vals = X.eval_rows(T.apply(V))
    return float(np.max(vals)) if vals.size else 0.0
