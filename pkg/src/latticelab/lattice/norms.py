"""Monotone lattice norms on complex n-vectors.

A norm only ever sees ``|f|``: every kind here is a lattice norm, so phases
are irrelevant to its value.  Each kind carries a mask (the admissible
support); a vector with mass off the mask has norm ``+inf``.

Besides direct evaluation, every norm can describe its unit ball to cvxpy
through two hooks used by the solvers:

``_epi(x, t)``
    constraints expressing ``||x|| <= t`` for a nonnegative expression ``x``
    (including ``x = 0`` off the mask);
``_dual_epi(x, t)``
    constraints expressing ``sup{sum x g mu : g >= 0, ||g|| <= 1} <= t``, the
    associate norm read as a seminorm (coordinates of ``x`` off the mask are
    ignored, because every ``g`` in the ball vanishes there).
"""

import abc

import cvxpy as cp
import numpy as np

from .._validation import check_mask, check_p, check_positive_vector, check_rows, check_theta, check_vector
from . import _conic
from .space import FiniteMeasureSpace


def conjugate_exponent(p):
    if p == 1:
        return np.inf
    if p == np.inf:
        return 1.0
    return p / (p - 1.0)


class LatticeNorm(abc.ABC):
    """Base class: a monotone norm bound to a FiniteMeasureSpace."""

    kind = "abstract"

    def __init__(self, space, mask):
        if not isinstance(space, FiniteMeasureSpace):
            raise TypeError("space must be a FiniteMeasureSpace")
        self._space = space
        mask = check_mask(mask, space.n)
        mask.setflags(write=False)
        self._mask = mask
        self._programs = {}

    @property
    def space(self):
        return self._space

    @property
    def n(self):
        return self._space.n

    @property
    def mask(self):
        return self._mask

    def support(self):
        return frozenset(int(k) for k in np.flatnonzero(self._mask))

    def __call__(self, f):
        return norm_eval(self, f)

    def eval_rows(self, F):
        """Norm of every row of ``F``; subclasses vectorise when they can."""
        F = check_rows(F, self.n)
        return np.array([norm_eval(self, row) for row in F])

    @abc.abstractmethod
    def _value(self, a):
        """Norm of a nonzero nonnegative vector ``a`` that vanishes off the mask."""

    @abc.abstractmethod
    def _epi(self, x, t):
        ...

    @abc.abstractmethod
    def _dual_epi(self, x, t):
        ...

    def _off_mask_zero(self, x):
        off = np.flatnonzero(~self._mask)
        return [x[off] == 0] if off.size else []

    def _same_space(self, *norms):
        for other in norms:
            if not isinstance(other, LatticeNorm):
                raise TypeError("expected LatticeNorm operands")
            if other.space != self._space:
                raise ValueError("norms must live on the same measure space")


def norm_eval(X, f):
    """Evaluate ``||f||_X``; ``+inf`` when ``f`` is nonzero off the mask."""
    a = np.abs(check_vector(f, X.n))
    if np.any(a[~X.mask] > 0):
        return np.inf
    if not np.any(a > 0):
        return 0.0
    return float(X._value(a))


def support(X):
    """Admissible support of ``X`` as a frozenset of atom indices."""
    return X.support()


def epigraph_value(X, a):
    """Solve ``min t s.t. ||x||_X <= t, x >= a`` for nonnegative ``a``.

    This is the generic evaluation route for norms defined by an infimum
    (sums and Calderon products).  The program is compiled once per norm
    with ``a`` as a parameter and re-solved at unit scale.
    """
    scale = float(np.max(a))
    prog = X._programs.get("value")
    if prog is None:
        param = cp.Parameter(X.n, nonneg=True)
        x = cp.Variable(X.n, nonneg=True)
        t = cp.Variable()
        prob = cp.Problem(cp.Minimize(t), [x >= param] + X._epi(x, t))
        prog = X._programs["value"] = (param, prob)
    param, prob = prog
    param.value = a / scale
    return scale * _conic.solve(prob, f"{X.kind} norm")


class WeightedLp(LatticeNorm):
    """``(sum_k |f_k w_k|^p mu_k)^(1/p)`` on the mask; ``max_k |f_k| w_k`` for p = inf."""

    kind = "WeightedLp"

    def __init__(self, space, p, w=None, mask=None):
        super().__init__(space, mask)
        self._p = check_p(p)
        w = np.ones(space.n) if w is None else check_positive_vector(w, space.n, "norm weights")
        w.setflags(write=False)
        self._w = w

    @property
    def p(self):
        return self._p

    @property
    def w(self):
        return self._w

    def __repr__(self):
        p = "inf" if self._p == np.inf else f"{self._p:g}"
        return f"WeightedLp(p={p}, n={self.n}, support={sorted(self.support())})"

    @property
    def _coef(self):
        # scaling that turns the weighted norm into a plain p-norm
        if self._p == np.inf:
            return self._w
        return self._w * self.space.mu ** (1.0 / self._p)

    def conjugate(self):
        """The associate norm: WeightedLp(p', 1/w) on the same mask."""
        return WeightedLp(self.space, conjugate_exponent(self._p), 1.0 / self._w, self._mask)

    def _value(self, a):
        return float(self.eval_rows(a[None, :])[0])

    def eval_rows(self, F):
        F = np.abs(check_rows(F, self.n))
        out = np.full(F.shape[0], np.inf)
        finite = ~np.any(F[:, ~self._mask] > 0, axis=1)
        # finite rows vanish off the mask; summing over all atoms keeps the
        # reduction order independent of the mask, so restrictions are exact
        G = F[finite] * self._w
        if self._p == np.inf:
            vals = G.max(axis=1, initial=0.0)
        else:
            # factor out the max so large p does not overflow
            top = G.max(axis=1, initial=0.0)
            safe = np.where(top > 0, top, 1.0)
            ratio = G / safe[:, None]
            vals = top * np.sum(ratio**self._p * self.space.mu, axis=1) ** (1.0 / self._p)
        out[finite] = vals
        return out

    def _norm_cons(self, x, t):
        idx = np.flatnonzero(self._mask)
        cons = [t >= 0]
        if idx.size == 0:
            return cons
        coef = self._coef[idx]
        xi = x[idx]
        if self._p == 1:
            cons.append(coef @ xi <= t)
        elif self._p == np.inf:
            cons.append(cp.multiply(coef, xi) <= t)
        else:
            cons.append(cp.pnorm(cp.multiply(coef, xi), self._p) <= t)
        return cons

    def _epi(self, x, t):
        return self._off_mask_zero(x) + self._norm_cons(x, t)

    def _dual_epi(self, x, t):
        return self.conjugate()._norm_cons(x, t)


class Intersection(LatticeNorm):
    """``max(||f||_0, ||f||_1)`` on the common support."""

    kind = "Intersection"

    def __init__(self, X0, X1):
        X0._same_space(X1)
        super().__init__(X0.space, X0.mask & X1.mask)
        self.X0, self.X1 = X0, X1

    def __repr__(self):
        return f"Intersection({self.X0!r}, {self.X1!r})"

    def _value(self, a):
        return max(norm_eval(self.X0, a), norm_eval(self.X1, a))

    def eval_rows(self, F):
        return np.maximum(self.X0.eval_rows(F), self.X1.eval_rows(F))

    def _epi(self, x, t):
        return self.X0._epi(x, t) + self.X1._epi(x, t)

    def _dual_epi(self, x, t):
        # (X0 n X1)' = X0' + X1': split x over the common support
        idx = np.flatnonzero(self._mask)
        if idx.size == 0:
            return [t >= 0]
        y = cp.Variable(self.n, nonneg=True)
        z = cp.Variable(self.n, nonneg=True)
        s0, s1 = cp.Variable(), cp.Variable()
        cons = [y[idx] + z[idx] >= x[idx], s0 + s1 <= t]
        off = np.flatnonzero(~self._mask)
        if off.size:
            cons += [y[off] == 0, z[off] == 0]
        return cons + self.X0._dual_epi(y, s0) + self.X1._dual_epi(z, s1)


class Sum(LatticeNorm):
    """``inf{||f0||_0 + ||f1||_1 : f0 + f1 = f}`` on the union of supports.

    For lattice norms the infimum may be taken over pointwise splits
    ``|f| = a + b`` with ``a, b >= 0`` (phases aligned with ``f``); relaxing the
    split to ``a + b >= |f|`` changes nothing by monotonicity and keeps the
    program convex.  The minimisation couples the atoms only through the two
    norm values, and is handed to the conic solver as one program.
    """

    kind = "Sum"

    def __init__(self, X0, X1):
        X0._same_space(X1)
        super().__init__(X0.space, X0.mask | X1.mask)
        self.X0, self.X1 = X0, X1

    def __repr__(self):
        return f"Sum({self.X0!r}, {self.X1!r})"

    def _value(self, a):
        return epigraph_value(self, a)

    def _epi(self, x, t):
        y = cp.Variable(self.n, nonneg=True)
        z = cp.Variable(self.n, nonneg=True)
        s0, s1 = cp.Variable(), cp.Variable()
        cons = self._off_mask_zero(x) + [y + z >= x, s0 + s1 <= t]
        return cons + self.X0._epi(y, s0) + self.X1._epi(z, s1)

    def _dual_epi(self, x, t):
        # (X0 + X1)' = X0' n X1'
        return self.X0._dual_epi(x, t) + self.X1._dual_epi(x, t)


class Associate(LatticeNorm):
    """The Kothe dual ``sup{|sum f g mu| : ||g||_X <= 1}``; same mask as ``X``."""

    kind = "Associate"

    def __init__(self, X):
        if not isinstance(X, LatticeNorm):
            raise TypeError("Associate expects a LatticeNorm")
        super().__init__(X.space, X.mask)
        self.X = X

    def __repr__(self):
        return f"Associate({self.X!r})"

    def _value(self, a):
        from .associate import associate_norm

        return associate_norm(self.X, a)

    def eval_rows(self, F):
        if isinstance(self.X, WeightedLp):
            return self.X.conjugate().eval_rows(F)
        return super().eval_rows(F)

    def _epi(self, x, t):
        return self._off_mask_zero(x) + self.X._dual_epi(x, t)

    def _dual_epi(self, x, t):
        # X'' = X isometrically in finite dimensions
        return self.X._epi(_conic.masked(self._mask, x), t)


class CalderonProduct(LatticeNorm):
    """``X0^(1-theta) X1^theta``: inf of ``lam`` with ``|f| <= lam f0^(1-theta) f1^theta``.

    By homogeneity the norm equals ``inf max(||g0||_0, ||g1||_1)`` over
    nonnegative ``g0, g1`` with ``g0^(1-theta) g1^theta >= |f|``.  After the
    coordinatewise change of variables ``g = exp(u)`` this is a jointly convex
    problem; we keep the original variables and encode each pointwise
    constraint as a 3-d power cone.
    """

    kind = "CalderonProduct"

    def __init__(self, X0, X1, theta):
        X0._same_space(X1)
        super().__init__(X0.space, X0.mask & X1.mask)
        self.X0, self.X1 = X0, X1
        self.theta = check_theta(theta)

    def __repr__(self):
        return f"CalderonProduct({self.X0!r}, {self.X1!r}, theta={self.theta:g})"

    def _value(self, a):
        return epigraph_value(self, a)

    def _epi(self, x, t):
        g0 = cp.Variable(self.n, nonneg=True)
        g1 = cp.Variable(self.n, nonneg=True)
        cons = self._off_mask_zero(x) + self.X0._epi(g0, t) + self.X1._epi(g1, t)
        return cons + [_pow_cone(g0, g1, x, self.theta)]

    def _dual_epi(self, x, t):
        # (X0^(1-theta) X1^theta)' = X0'^(1-theta) X1'^theta on the common support
        idx = np.flatnonzero(self._mask)
        if idx.size == 0:
            return [t >= 0]
        g0 = cp.Variable(self.n, nonneg=True)
        g1 = cp.Variable(self.n, nonneg=True)
        cons = self.X0._dual_epi(g0, t) + self.X1._dual_epi(g1, t)
        return cons + [_pow_cone(g0[idx], g1[idx], x[idx], self.theta)]


def _pow_cone(g0, g1, x, theta):
    """``g0^(1-theta) g1^theta >= x`` coordinatewise."""
    if x.shape == (1,):
        # cvxpy rejects length-1 vectors here; pass scalars instead
        return cp.PowCone3D(g0[0], g1[0], x[0], 1.0 - theta)
    return cp.PowCone3D(g0, g1, x, np.full(x.shape, 1.0 - theta))


class Restricted(LatticeNorm):
    """``X`` with its mask shrunk to ``mask``: ``||y||_Y = ||E y||_X``."""

    kind = "Restricted"

    def __init__(self, X, mask):
        mask = check_mask(mask, X.n)
        if np.any(mask & ~X.mask):
            from ..exceptions import PreconditionViolation

            bad = sorted(int(k) for k in np.flatnonzero(mask & ~X.mask))
            raise PreconditionViolation("restriction mask is not contained in mask(X)", witness=bad)
        super().__init__(X.space, mask)
        self.X = X

    def __repr__(self):
        return f"Restricted({self.X!r}, support={sorted(self.support())})"

    def _value(self, a):
        return norm_eval(self.X, a)

    def eval_rows(self, F):
        F = check_rows(F, self.n)
        out = self.X.eval_rows(F)
        out[np.any(np.abs(F[:, ~self._mask]) > 0, axis=1)] = np.inf
        return out

    def _epi(self, x, t):
        return self._off_mask_zero(x) + self.X._epi(x, t)

    def _dual_epi(self, x, t):
        return self.X._dual_epi(_conic.masked(self._mask, x), t)
