"""Associate (Kothe dual) norms and the checks built on them."""

import cvxpy as cp
import numpy as np

from .._validation import check_vector
from ..exceptions import PreconditionViolation
from . import _conic
from .norms import Associate, WeightedLp, norm_eval


def associate_norm(X, f, method="auto"):
    """``sup{ sum_k |f_k g_k| mu_k : ||g||_X <= 1 }``.

    The absolute-value form is used, so the maximisation runs over
    nonnegative ``g`` supported on the mask.  ``method`` is ``"closed"``
    (Hoelder conjugate, WeightedLp only), ``"solver"`` (linear objective over
    the unit ball of ``X``, solved as a conic program) or ``"auto"``.
    Vectors with mass off ``mask(X)`` get ``+inf``.
    """
    if method not in ("auto", "closed", "solver"):
        raise ValueError(f"unknown method {method!r}")
    a = np.abs(check_vector(f, X.n))
    if np.any(a[~X.mask] > 0):
        return np.inf
    if not np.any(a > 0):
        return 0.0
    if method == "closed" or (method == "auto" and isinstance(X, WeightedLp)):
        if not isinstance(X, WeightedLp):
            raise ValueError("closed form is only available for WeightedLp")
        return float(X.conjugate()._value(a))
    return _support_function(X, a)


def _support_function(X, a):
    scale = float(np.max(a))
    prog = X._programs.get("associate")
    if prog is None:
        c = cp.Parameter(X.n, nonneg=True)
        g = cp.Variable(X.n, nonneg=True)
        prob = cp.Problem(cp.Maximize(c @ g), X._epi(g, 1.0))
        prog = X._programs["associate"] = (c, prob)
    c, prob = prog
    c.value = a * X.space.mu / scale
    return scale * _conic.solve(prob, f"associate of {X.kind}")


def associate_of(X):
    """Cached ``Associate(X)`` so repeated solves reuse one compiled program."""
    A = X._programs.get("associate_norm")
    if A is None:
        A = X._programs["associate_norm"] = Associate(X)
    return A


def second_associate_check(X, f, rtol=1e-5):
    """Return ``(||f||_X, ||f||_X'', equal)``; finite lattices have the Fatou property."""
    nx = norm_eval(X, f)
    nxx = associate_norm(associate_of(X), f, method="solver")
    if np.isinf(nx) or np.isinf(nxx):
        return nx, nxx, bool(np.isinf(nx) and np.isinf(nxx))
    return nx, nxx, bool(abs(nx - nxx) <= rtol * max(abs(nx), abs(nxx)) + 1e-12)


def lolu_condition_check(X, f, chain, tol=1e-9):
    """Check the monotone-convergence hypothesis on one increasing chain.

    ``chain`` must satisfy ``0 <= f_1 <= f_2 <= ... <= |f|`` pointwise, else
    PreconditionViolation.  On finite data the limit itself is not
    observable; what is checked is that the gaps ``||f|| - ||f_n||`` are
    nonnegative, nonincreasing and bounded by ``||f - f_n||``, which forces
    them to vanish as the chain converges.  In finite dimensions the answer is
    always True.
    """
    target = np.abs(check_vector(f, X.n))
    if len(chain) == 0:
        raise PreconditionViolation("chain is empty")
    rows = []
    for i, fn in enumerate(chain):
        v = check_vector(fn, X.n)
        if np.any(np.abs(v.imag) > 0) or np.any(v.real < -tol):
            raise PreconditionViolation("chain elements must be nonnegative", witness=i)
        v = v.real
        if np.any(v > target + tol):
            raise PreconditionViolation("chain element exceeds f", witness=i)
        if rows and np.any(v < rows[-1] - tol):
            k = int(np.flatnonzero(v < rows[-1] - tol)[0])
            raise PreconditionViolation("chain is not nondecreasing", witness=(i, k))
        rows.append(v)
    full = norm_eval(X, target)
    gaps = [full - norm_eval(X, v) for v in rows]
    resid = [norm_eval(X, target - v) for v in rows]
    scale = max(full, 1.0)
    ok = all(g >= -tol * scale and g <= r + tol * scale for g, r in zip(gaps, resid))
    ok = ok and all(b <= a + tol * scale for a, b in zip(gaps, gaps[1:]))
    return bool(ok)
