"""scikit-learn style wrapper around the greedy epsilon-net."""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .._validation import check_distance_matrix, check_eps
from .nets import exact_covering_number, greedy_net
from .semimetric import SemimetricSpace


class EpsilonNet(ClusterMixin, BaseEstimator):
    """Greedy closed-ball ``eps``-net on a precomputed semimetric.

    Parameters
    ----------
    eps : float
        Ball radius.
    exact : bool
        Also compute the minimum covering number (small inputs only).

    Attributes
    ----------
    centers_ : ndarray of int
        Indices of the net points, in selection order.
    labels_ : ndarray of int
        Position in ``centers_`` of the first centre covering each point.
    n_centers_ : int
    exact_size_ : int or None
    """

    def __init__(self, eps=1.0, exact=False):
        self.eps = eps
        self.exact = exact

    def fit(self, X, y=None):
        """``X`` is a square distance table (sklearn's ``metric="precomputed"``)."""
        eps = check_eps(self.eps)
        space = SemimetricSpace(check_distance_matrix(X))
        centers = greedy_net(space, eps)
        self.centers_ = np.asarray(centers, dtype=int)
        self.n_centers_ = len(centers)
        self.labels_ = self._assign(space.d[:, self.centers_], eps)
        self.exact_size_ = exact_covering_number(space, eps) if self.exact else None
        return self

    def predict(self, X):
        """``X[i, j]`` is the distance from query ``i`` to training point ``j``.

        Queries outside every ball get label -1.
        """
        check_is_fitted(self, "centers_")
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return self._assign(X[:, self.centers_], check_eps(self.eps))

    @staticmethod
    def _assign(to_centers, eps):
        inside = to_centers <= eps
        return np.where(inside.any(axis=1), np.argmax(inside, axis=1), -1)
