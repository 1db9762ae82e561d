"""Lattice couples, Calderon product norms and the duality identities around them.

The complex interpolation norm ``[X0, X1]_theta`` is realised throughout as
the Calderon product norm ``X0^(1-theta) X1^theta``; for lattice couples the
two agree on every element of the interpolation space.
"""

from typing import NamedTuple

import numpy as np

from ._validation import check_p, check_theta, check_vector
from .exceptions import InvariantViolation, PreconditionViolation, SolverFailure
from .lattice import (
    Associate,
    CalderonProduct,
    Intersection,
    Restricted,
    Sum,
    WeightedLp,
    associate_norm,
    norm_eval,
)


def relative_error(a, b):
    if a == b:
        return 0.0
    if np.isinf(a) or np.isinf(b):
        return np.inf
    return abs(a - b) / max(abs(a), abs(b))


class CoupleSpec:
    """Two lattice norms on one measure space."""

    def __init__(self, X0, X1):
        X0._same_space(X1)
        self.X0, self.X1 = X0, X1
        self._cache = {}

    def __repr__(self):
        return f"CoupleSpec({self.X0!r}, {self.X1!r})"

    @property
    def space(self):
        return self.X0.space

    @property
    def n(self):
        return self.X0.n

    def __getitem__(self, j):
        if j not in (0, 1):
            raise IndexError("couple endpoints are indexed by 0 and 1")
        return self.X1 if j else self.X0

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def intersection(self):
        return self._cached("cap", lambda: Intersection(self.X0, self.X1))

    @property
    def sum(self):
        return self._cached("sum", lambda: Sum(self.X0, self.X1))

    def associate(self):
        """The couple ``(X0', X1')``."""
        return self._cached("assoc", lambda: CoupleSpec(Associate(self.X0), Associate(self.X1)))

    def second_associate(self):
        """The couple ``(X0'', X1'')``."""
        return self._cached("assoc2", lambda: self.associate().associate())

    def product(self, theta):
        theta = check_theta(theta)
        return self._cached(("prod", theta), lambda: CalderonProduct(self.X0, self.X1, theta))

    def theta_norm(self, theta):
        theta = check_theta(theta)
        return self._cached(("theta", theta), lambda: ThetaNorm(self, theta))


def calderon_closed_form(p0, w0, p1, w1, theta):
    """Exponent and weight of the Calderon product of two weighted l^p norms.

    ``1/p = (1-theta)/p0 + theta/p1`` (with ``1/inf = 0``) and
    ``w = w0^(1-theta) w1^theta``.
    """
    p0, p1 = check_p(p0), check_p(p1)
    theta = check_theta(theta)
    inv = (1.0 - theta) / p0 + theta / p1
    p = np.inf if inv == 0 else 1.0 / inv
    w = np.asarray(w0, dtype=float) ** (1.0 - theta) * np.asarray(w1, dtype=float) ** theta
    return p, w


def as_weighted_lp(X):
    """A WeightedLp equal to ``X`` when one is known in closed form, else None."""
    if isinstance(X, WeightedLp):
        return X
    if isinstance(X, Associate):
        inner = as_weighted_lp(X.X)
        return None if inner is None else inner.conjugate()
    if isinstance(X, Restricted):
        inner = as_weighted_lp(X.X)
        return None if inner is None else WeightedLp(X.space, inner.p, inner.w, X.mask)
    return None


class ThetaNorm:
    """The interpolation norm of a couple at ``theta``.

    Realised as the Calderon product; when both endpoints are weighted l^p
    norms the closed form is used for evaluation (it is what the solver route
    is checked against).
    """

    def __init__(self, couple, theta):
        self.couple = couple
        self.theta = check_theta(theta)
        self.realization = couple.product(self.theta)
        self.closed_form = None
        a, b = as_weighted_lp(couple.X0), as_weighted_lp(couple.X1)
        if a is not None and b is not None:
            p, w = calderon_closed_form(a.p, a.w, b.p, b.w, self.theta)
            self.closed_form = WeightedLp(couple.space, p, w, a.mask & b.mask)

    def __repr__(self):
        return f"ThetaNorm({self.couple!r}, theta={self.theta:g})"

    @property
    def space(self):
        return self.couple.space

    @property
    def n(self):
        return self.couple.n

    @property
    def mask(self):
        return self.realization.mask

    def __call__(self, f):
        return norm_eval(self.closed_form or self.realization, f)

    def eval_rows(self, F):
        return (self.closed_form or self.realization).eval_rows(F)

    def as_norm(self):
        return self.closed_form or self.realization


def calderon_norm(c, theta, f):
    """Calderon product norm of ``f`` over the couple ``c``, by the conic solver.

    ``inf{lam : |f| <= lam f0^(1-theta) f1^theta, f_j >= 0, ||f_j||_j <= 1}``,
    with ``+inf`` off ``mask(X0) & mask(X1)``.  The closed form is never used
    here; see ThetaNorm for that.
    """
    X = c.product(theta)
    try:
        return norm_eval(X, f)
    except SolverFailure as exc:
        upper = norm_eval(c.intersection, f)
        raise SolverFailure(str(exc), bound=exc.bound, bracket=(0.0, upper)) from exc


def _require_joint_support(c, f):
    f = check_vector(f, c.n)
    joint = c.X0.mask & c.X1.mask
    off = np.flatnonzero((np.abs(f) > 0) & ~joint)
    if off.size:
        raise PreconditionViolation("vector is not supported on the joint mask", witness=off.tolist())
    return f


def lozanovskii_check(c, theta, f, rtol=1e-5):
    """Both sides of ``(X0^(1-t) X1^t)' = X0'^(1-t) X1'^t`` at ``f``.

    Returns ``(lhs, rhs, relerr)`` and raises InvariantViolation when
    ``relerr > rtol``.
    """
    f = _require_joint_support(c, f)
    lhs = associate_norm(c.product(theta), f, method="solver")
    rhs = calderon_norm(c.associate(), theta, f)
    err = relative_error(lhs, rhs)
    if err > rtol:
        raise InvariantViolation(f"Lozanovskii sides differ: {lhs!r} vs {rhs!r} (relerr {err:.3g})")
    return lhs, rhs, err


class DualPairing(NamedTuple):
    value: float
    direct: float
    relerr: float


def theta_dual_pairing_sup(c, theta, x, rtol=1e-5):
    """Sup of ``|sum x y mu|`` over the unit ball of ``X0'^(1-t) X1'^t``.

    The value is computed as an associate norm of the Calderon product of
    the associates, and compared with the Calderon norm of ``x`` over the
    second-associate couple ``(X0'', X1'')``.  Raises InvariantViolation
    when the two routes differ by more than ``rtol``.
    """
    x = check_vector(x, c.n)
    if np.isinf(norm_eval(c.intersection, x)):
        raise PreconditionViolation("x is not in the intersection X0 n X1")
    value = associate_norm(c.associate().product(theta), x, method="solver")
    direct = calderon_norm(c.second_associate(), theta, x)
    err = relative_error(value, direct)
    if err > rtol:
        raise InvariantViolation(f"dual pairing routes differ: {value!r} vs {direct!r} (relerr {err:.3g})")
    return DualPairing(value, direct, err)
