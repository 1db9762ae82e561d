"""Finite-data versions of Cauchy-subsequence extraction and diagonalisation."""

from typing import NamedTuple

import numpy as np

from .._validation import check_eps
from ..exceptions import DiagonalizationError


class CauchyExtraction(NamedTuple):
    indices: list  # positions n_1 < n_2 < ... in the input sequence
    centers: list  # point index of the centre of ball B_k
    radii: list  # radius of B_k, i.e. scale * 2**-k

    @property
    def depth(self):
        return len(self.indices)


def cauchy_subsequence(X, seq, max_depth=None, scale=1.0):
    """Extract a subsequence via nested balls of radius ``scale * 2**-k``.

    ``seq`` lists point indices of ``X`` (the sequence ``x_1, x_2, ...``).
    Level ``k`` covers the surviving positions by balls of radius
    ``scale * 2**-k`` centred at surviving points (greedy net), keeps the ball
    holding the most surviving positions after the previous pick (lowest centre
    wins ties), and picks the earliest such position as ``n_k``.  Every pick
    from level ``N`` on lies in ``B_N``, so their pairwise distances are at most
    ``2 * scale * 2**-N``.  Stops when the data runs out or at ``max_depth``;
    the achieved depth is ``len(result.indices)``.
    """
    seq = np.asarray(seq, dtype=int).ravel()
    if seq.size < 2:
        raise ValueError("sequence must have at least two terms")
    if seq.min() < 0 or seq.max() >= len(X):
        raise ValueError("sequence refers to points outside the space")
    scale = check_eps(scale, "scale")
    d = X.d
    alive = np.arange(seq.size)
    picks, centers, radii = [], [], []
    k = 0
    while alive.size and (max_depth is None or k < max_depth):
        k += 1
        radius = scale * 2.0**-k
        pts = seq[alive]
        uncovered = np.ones(alive.size, dtype=bool)
        best = None
        while uncovered.any():
            i = int(np.argmax(uncovered))
            inside = d[pts[i], pts] <= radius
            uncovered &= ~inside
            if best is None or inside.sum() > best[1].sum():
                best = (int(pts[i]), inside)
        center, inside = best
        alive = alive[inside]
        picks.append(int(alive[0]))
        centers.append(center)
        radii.append(radius)
        alive = alive[1:]
    return CauchyExtraction(picks, centers, radii)


def tail_diameters(X, seq, extraction):
    """``max d`` over the picks from level ``N`` on, for each level ``N``."""
    seq = np.asarray(seq, dtype=int)
    pts = seq[np.asarray(extraction.indices, dtype=int)]
    out = []
    for start in range(len(pts)):
        tail = pts[start:]
        out.append(float(X.d[np.ix_(tail, tail)].max()))
    return out


def _clusters(values, cols, tol):
    order = np.argsort(values, kind="stable")
    v = values[order]
    cuts = np.flatnonzero(np.diff(v) > tol) + 1
    return [cols[order[part]] for part in np.split(np.arange(v.size), cuts)]


def diag_subsequence(values, tol, min_columns=2):
    """Column subsequence along which every row oscillates by at most ``tol``.

    Rows are processed in order.  For each row the surviving columns are
    clustered by sorting the row's values and splitting at gaps larger than
    ``tol``; the largest cluster survives (ties go to the cluster holding the
    lowest column index).  A cluster whose spread still exceeds ``tol`` is cut
    down to the densest window of width ``tol``.  Raises DiagonalizationError
    when fewer than ``min_columns`` columns would remain.
    """
    values = np.asarray(values)
    if np.iscomplexobj(values):
        raise ValueError("diag_subsequence works on real-valued rows")
    values = np.atleast_2d(values.astype(float))
    if not np.all(np.isfinite(values)):
        raise ValueError("rows must be bounded (finite)")
    tol = check_eps(tol, "tol")
    cols = np.arange(values.shape[1])
    for r, row in enumerate(values):
        groups = _clusters(row[cols], cols, tol)
        best = max(groups, key=lambda g: (g.size, -g.min()))
        vals = row[best]
        if vals.max() - vals.min() > tol:
            best = _densest_window(row, best, tol)
        if best.size < min_columns:
            raise DiagonalizationError(r, _best_oscillation(row[cols], min_columns))
        cols = np.sort(best)
    return [int(c) for c in cols]


def _densest_window(row, cols, tol):
    order = np.argsort(row[cols], kind="stable")
    v = row[cols][order]
    hi = np.searchsorted(v, v + tol, side="right")
    counts = hi - np.arange(v.size)
    candidates = np.flatnonzero(counts == counts.max())
    windows = [cols[order[i:hi[i]]] for i in candidates]
    return min(windows, key=lambda w: w.min())


def _best_oscillation(vals, k):
    if vals.size < k:
        return np.inf
    v = np.sort(vals)
    return float(np.min(v[k - 1:] - v[: v.size - k + 1]))


def oscillations(values, cols):
    """Per-row spread ``max - min`` over the columns ``cols``."""
    sub = np.atleast_2d(np.asarray(values, dtype=float))[:, cols]
    return sub.max(axis=1) - sub.min(axis=1)
