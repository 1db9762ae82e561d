import numpy as np

from .._validation import check_positive_vector


class FiniteMeasureSpace:
    """An n-atom measure space with strictly positive atom masses.

    Every pairing in the package is ``sum_k f_k g_k mu_k`` over this space.
    """

    def __init__(self, weights):
        mu = check_positive_vector(weights, name="measure weights")
        mu.setflags(write=False)
        self._mu = mu

    @classmethod
    def uniform(cls, n):
        return cls(np.ones(int(n)))

    @property
    def mu(self):
        return self._mu

    @property
    def n(self):
        return self._mu.shape[0]

    def pairing(self, f, g):
        """Integral of ``f * g`` (no conjugation: the pairing is bilinear)."""
        return complex(np.sum(np.asarray(f) * np.asarray(g) * self._mu))

    def __eq__(self, other):
        if not isinstance(other, FiniteMeasureSpace):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._mu, other._mu)

    def __hash__(self):
        return hash(self._mu.tobytes())

    def __repr__(self):
        return f"FiniteMeasureSpace(n={self.n})"
