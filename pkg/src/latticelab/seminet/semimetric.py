"""Bilinear value tables and the semimetrics they induce."""

import numpy as np

from .._validation import check_distance_matrix

# rows are processed in blocks so the (block, m, l) difference tensor stays small
_BLOCK_ELEMS = 2_000_000


class BilinearSystem:
    """Finite sets ``A`` (rows) and ``B`` (columns) with a complex table ``h``."""

    def __init__(self, h):
        h = np.asarray(h)
        if h.ndim != 2:
            raise ValueError("h must be a 2-d table")
        if h.shape[0] == 0 or h.shape[1] == 0:
            raise ValueError("A and B must both be nonempty")
        h = h.astype(complex)
        if not np.all(np.isfinite(h)):
            raise ValueError("h must be finite")
        h.setflags(write=False)
        self.h = h

    @property
    def shape(self):
        return self.h.shape

    def transpose(self):
        """The same system with the roles of ``A`` and ``B`` exchanged."""
        return BilinearSystem(self.h.T)

    def d_A(self):
        return sup_distance_rows(self.h)

    def d_B(self):
        return sup_distance_rows(self.h.T)


def sup_distance_rows(h, rows=None):
    """``D[i, j] = max_b |h[i, b] - h[j, b]|``, optionally only for ``rows`` i."""
    h = np.asarray(h)
    m, ell = h.shape
    rows = np.arange(m) if rows is None else np.asarray(rows, dtype=int)
    out = np.empty((rows.size, m))
    step = max(1, _BLOCK_ELEMS // max(1, m * ell))
    for start in range(0, rows.size, step):
        block = h[rows[start:start + step]]
        out[start:start + step] = np.abs(block[:, None, :] - h[None, :, :]).max(axis=2)
    return out


class SemimetricSpace:
    """A finite point set with a symmetric, nonnegative, zero-diagonal distance table.

    Distinct points may sit at distance zero.
    """

    def __init__(self, d, check=True):
        d = check_distance_matrix(d) if check else np.asarray(d, dtype=float)
        d = np.array(d, dtype=float)
        d.setflags(write=False)
        self.d = d
        if check and self.triangle_defect() > 1e-12 * max(1.0, self.diameter):
            raise ValueError("distance table violates the triangle inequality")

    @classmethod
    def from_points(cls, X, metric="euclidean"):
        """Build from coordinates; ``metric`` is ``"euclidean"`` or ``"sup"``."""
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        diff = X[:, None, :] - X[None, :, :]
        if metric == "euclidean":
            d = np.sqrt(np.sum(diff**2, axis=2))
        elif metric == "sup":
            d = np.abs(diff).max(axis=2)
        else:
            raise ValueError(f"unknown metric {metric!r}")
        # a norm distance is a metric, no need to re-check all triples
        return cls(d, check=False)

    def __len__(self):
        return self.d.shape[0]

    def __repr__(self):
        return f"SemimetricSpace(size={len(self)})"

    @property
    def diameter(self):
        return float(self.d.max())

    def triangle_defect(self):
        """``max_{x,y,z} d(x,z) - d(x,y) - d(y,z)``; <= 0 for a semimetric."""
        d = self.d
        worst = -np.inf
        for y in range(len(self)):
            worst = max(worst, float(np.max(d - d[:, y][:, None] - d[y][None, :])))
        return worst

    def check_axioms(self, atol=1e-12):
        """Exhaustive check of the semimetric axioms over all triples."""
        d = self.d
        return bool(
            np.all(np.abs(np.diag(d)) <= atol)
            and np.all(d >= -atol)
            and np.allclose(d, d.T, rtol=0, atol=atol)
            and self.triangle_defect() <= atol
        )


def induce_semimetrics(s):
    """``(A, d_A)`` and ``(B, d_B)`` with ``d_A(a1, a2) = max_b |h(a1, b) - h(a2, b)|``."""
    if not isinstance(s, BilinearSystem):
        s = BilinearSystem(s)
    return SemimetricSpace(s.d_A(), check=False), SemimetricSpace(s.d_B(), check=False)
