"""Identity suites run by ``latticelab verify``.

Each suite evaluates one identity on the norms and couples declared in the
config plus seeded random instances, and reports the worst relative error.
"""

import itertools
from typing import NamedTuple

import numpy as np

from .calderon import (
    CoupleSpec,
    calderon_norm,
    lozanovskii_check,
    relative_error,
    theta_dual_pairing_sup,
)
from .couple_ops import support_equality_check
from .exceptions import SolverFailure
from .lattice import Associate, FiniteMeasureSpace, Intersection, Sum, WeightedLp, associate_norm, second_associate_check
from .rng import stream
from .seminet import BilinearSystem, SemimetricSpace

EXPONENTS = (1.0, 1.5, 2.0, 3.0, np.inf)
THETAS = (0.25, 0.5, 0.75)


class SuiteResult(NamedTuple):
    suite: str
    instances: int
    max_relative_error: float
    passed: bool

    def as_record(self):
        return {
            "suite": self.suite,
            "instances": self.instances,
            "max_relative_error": self.max_relative_error,
            "pass": self.passed,
        }


def random_norm(rng, space, mask_prob=0.0):
    p = EXPONENTS[rng.integers(len(EXPONENTS))]
    w = rng.uniform(0.25, 4.0, space.n)
    mask = None
    if mask_prob and rng.random() < mask_prob:
        mask = rng.random(space.n) < 0.7
        mask[rng.integers(space.n)] = True
    return WeightedLp(space, p, w, mask)


def random_space(rng, max_n):
    n = int(rng.integers(1, max_n + 1))
    return FiniteMeasureSpace(rng.uniform(0.25, 4.0, n))


def random_couple(rng, max_n):
    space = random_space(rng, max_n)
    return CoupleSpec(random_norm(rng, space), random_norm(rng, space))


def random_vector(rng, mask):
    n = mask.size
    f = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * mask
    if not np.any(f) and mask.any():
        f[np.flatnonzero(mask)[0]] = 1.0
    return f


class _Tally:
    def __init__(self):
        self.count, self.worst = 0, 0.0

    def add(self, err):
        self.count += 1
        self.worst = max(self.worst, float(err))


def _guard(tally, fn):
    try:
        tally.add(fn())
    except SolverFailure:
        tally.add(np.inf)


def _norm_instances(cfg, rng):
    norms = [cfg.norms[k] for k in sorted(cfg.norms)]
    for _ in range(cfg.verify["random_instances"]):
        norms.append(random_norm(rng, random_space(rng, cfg.verify["max_n"]), mask_prob=0.3))
    return norms


def _couple_instances(cfg, rng):
    out = [(cfg.couples[k], cfg.thetas[k]) for k in sorted(cfg.couples)]
    for _ in range(cfg.verify["random_instances"]):
        out.append((random_couple(rng, cfg.verify["max_n"]), (THETAS[rng.integers(3)],)))
    return out


def suite_associate(cfg, rng, tally):
    for X in _norm_instances(cfg, rng):
        for _ in range(cfg.verify["vectors"]):
            f = random_vector(rng, X.mask)
            _guard(tally, lambda: relative_error(
                associate_norm(X, f, method="solver"), associate_norm(X, f, method="closed")))


def suite_second_associate(cfg, rng, tally):
    for X in _norm_instances(cfg, rng):
        for _ in range(cfg.verify["vectors"]):
            f = random_vector(rng, X.mask)
            _guard(tally, lambda: relative_error(*second_associate_check(X, f, rtol=np.inf)[:2]))


def suite_sum_intersection(cfg, rng, tally):
    # (X0 + X1)' = X0' n X1' and (X0 n X1)' = X0' + X1', each evaluated twice
    for c, _ in _couple_instances(cfg, rng):
        a0, a1 = Associate(c.X0), Associate(c.X1)
        joint = c.X0.mask & c.X1.mask
        for _ in range(cfg.verify["vectors"]):
            f = random_vector(rng, joint)
            _guard(tally, lambda: relative_error(
                c.sum(f), associate_norm(Intersection(a0, a1), f, method="solver")))
            _guard(tally, lambda: relative_error(
                c.intersection(f), associate_norm(Sum(a0, a1), f, method="solver")))


def suite_calderon(cfg, rng, tally):
    for c, thetas in _couple_instances(cfg, rng):
        joint = c.X0.mask & c.X1.mask
        for theta in thetas:
            closed = c.theta_norm(theta).closed_form
            if closed is None:
                continue
            for _ in range(cfg.verify["vectors"]):
                f = random_vector(rng, joint)
                _guard(tally, lambda: relative_error(calderon_norm(c, theta, f), closed(f)))


def suite_lozanovskii(cfg, rng, tally):
    for c, thetas in _couple_instances(cfg, rng):
        joint = c.X0.mask & c.X1.mask
        for theta in thetas:
            for _ in range(cfg.verify["vectors"]):
                f = random_vector(rng, joint)
                _guard(tally, lambda: lozanovskii_check(c, theta, f, rtol=np.inf)[2])


def suite_duality(cfg, rng, tally):
    for c, thetas in _couple_instances(cfg, rng):
        joint = c.X0.mask & c.X1.mask
        for theta in thetas:
            for _ in range(cfg.verify["vectors"]):
                x = random_vector(rng, joint)
                _guard(tally, lambda: theta_dual_pairing_sup(c, theta, x, rtol=np.inf).relerr)


def suite_support(cfg, rng, tally):
    for c, thetas in _couple_instances(cfg, rng):
        for theta in thetas:
            tally.add(0.0 if support_equality_check(c, theta, numeric=True) else 1.0)
    # every pair of masks on a small space
    n = min(4, cfg.verify["max_n"])
    space = FiniteMeasureSpace(np.ones(n))
    masks = [np.array(bits, dtype=bool) for bits in itertools.product((False, True), repeat=n)]
    for m0, m1 in itertools.product(masks, repeat=2):
        c = CoupleSpec(WeightedLp(space, 1, mask=m0), WeightedLp(space, np.inf, mask=m1))
        tally.add(0.0 if support_equality_check(c, 0.5) else 1.0)


def suite_semimetric(cfg, rng, tally):
    for _ in range(max(1, cfg.verify["random_instances"])):
        m, ell = rng.integers(1, 33, size=2)
        s = BilinearSystem(rng.standard_normal((m, ell)) + 1j * rng.standard_normal((m, ell)))
        for d in (s.d_A(), s.d_B()):
            X = SemimetricSpace(d, check=False)
            scale = max(1.0, X.diameter)
            asym = float(np.max(np.abs(d - d.T)))
            tally.add(max(0.0, X.triangle_defect(), asym, float(np.max(np.abs(np.diag(d))))) / scale)


SUITE_FUNCS = {
    "associate": suite_associate,
    "second_associate": suite_second_associate,
    "sum_intersection": suite_sum_intersection,
    "calderon": suite_calderon,
    "lozanovskii": suite_lozanovskii,
    "duality": suite_duality,
    "support": suite_support,
    "semimetric": suite_semimetric,
}

# fixed sub-stream per suite, so selecting suites never shifts another suite's draws
SUITE_OFFSETS = {name: 1000 + i for i, name in enumerate(SUITE_FUNCS)}


def run_suite(name, cfg, seed):
    tally = _Tally()
    SUITE_FUNCS[name](cfg, stream(seed, SUITE_OFFSETS[name]), tally)
    tol = cfg.verify["tolerance"]
    return SuiteResult(name, tally.count, tally.worst, bool(tally.worst <= tol))


def run_suites(cfg, seed):
    return [run_suite(name, cfg, seed) for name in cfg.suites]
