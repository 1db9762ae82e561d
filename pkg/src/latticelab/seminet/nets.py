"""Epsilon-nets, covering numbers and separated sets (closed balls throughout)."""

import numpy as np

from .._validation import check_eps

EXACT_LIMIT = 20


def greedy_net(X, eps):
    """Centres whose closed ``eps``-balls cover ``X``.

    Repeatedly takes the lowest-index uncovered point as the next centre.
    """
    eps = check_eps(eps)
    d = X.d
    uncovered = np.ones(len(X), dtype=bool)
    centers = []
    while uncovered.any():
        c = int(np.argmax(uncovered))
        centers.append(c)
        uncovered &= d[c] > eps
    return centers


def exact_covering_number(X, eps, limit=EXACT_LIMIT):
    """Minimum number of closed ``eps``-balls centred in ``X`` covering ``X``.

    Branch and bound with iterative deepening: the lowest uncovered point
    must be covered by one of the centres within ``eps`` of it.  Returns
    None when ``len(X) > limit``.
    """
    eps = check_eps(eps)
    n = len(X)
    if n > limit:
        return None
    close = X.d <= eps
    balls = [sum(1 << int(j) for j in np.flatnonzero(close[c])) for c in range(n)]
    covering = [[int(c) for c in np.flatnonzero(close[u])] for u in range(n)]
    full = (1 << n) - 1
    biggest = max(bin(b).count("1") for b in balls)

    def search(uncovered, budget):
        if uncovered == 0:
            return True
        if budget == 0 or -(-bin(uncovered).count("1") // biggest) > budget:
            return False
        u = (uncovered & -uncovered).bit_length() - 1
        options = sorted(covering[u], key=lambda c: -bin(balls[c] & uncovered).count("1"))
        return any(search(uncovered & ~balls[c], budget - 1) for c in options)

    upper = len(greedy_net(X, eps))
    for k in range(1, upper):
        if search(full, k):
            return k
    return upper


def covering_number(X, eps, limit=EXACT_LIMIT):
    """``(greedy_size, exact_size)``; ``exact_size`` is None above ``limit`` points."""
    return len(greedy_net(X, eps)), exact_covering_number(X, eps, limit)


def separated_set(X, r):
    """Scan indices upward, keeping a point if it is farther than ``r`` from all kept.

    The result is ``r``-separated and maximal for the scan order.
    """
    r = check_eps(r, "r")
    d = X.d
    eligible = np.ones(len(X), dtype=bool)
    kept = []
    for i in range(len(X)):
        if eligible[i]:
            kept.append(i)
            eligible &= d[i] > r
    return kept


def covering_curve(X, eps_grid, limit=EXACT_LIMIT):
    """Rows ``(eps, greedy_size, exact_size)`` for each value in ``eps_grid``."""
    return [(float(e), *covering_number(X, e, limit)) for e in eps_grid]
