"""Command-line runner: ``latticelab {verify, covering, compactness}``.

Exit codes: 0 on success, 1 when a check fails or a cell cannot be
computed, 2 when the configuration cannot be resolved.
"""

import argparse
import os
import sys

from .config import SUITES, ConfigError, ExperimentConfig, eps_or_default, resolve_out
from .couple_ops import build_adjoint_system, compactness_profile
from .exceptions import LatticeLabError, SolverFailure
from .io import read_complex_csv, write_csv, write_json
from .rng import stream
from .seminet import BilinearSystem, SemimetricSpace, covering_curve, greedy_net, net_audit
from .suites import run_suites

COVERING_OFFSET = 2000
SANDWICH_SLACK = 1e-12


def build_parser():
    parser = argparse.ArgumentParser(prog="latticelab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("verify", "run identity suites and write a JSON report"),
        ("covering", "covering curves of both semimetrics of a bilinear system"),
        ("compactness", "covering profiles of an operator image across theta"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="JSON experiment config")
        p.add_argument("--out", help="output directory (overrides LATTICELAB_OUT and the config)")
        p.add_argument("--seed", type=int, help="override sampler.seed")
        if name == "verify":
            p.add_argument("--suite", action="append", choices=SUITES,
                           help="run only this suite (repeatable)")
    return parser


def cmd_verify(cfg, out, suites=None):
    if suites:
        cfg.suites = tuple(s for s in SUITES if s in suites)
    if cfg.seed is None:
        raise ConfigError("verify draws random instances, so the config needs sampler.seed")
    results = run_suites(cfg, cfg.seed)
    write_json(out / "verify_report.json", [r.as_record() for r in results])
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.suite:18s} {status}  instances={r.instances}  max_relative_error={r.max_relative_error:.3e}")
    return 0 if all(r.passed for r in results) else 1


def _covering_system(cfg):
    cov = cfg.covering
    if "csv" in cov:
        path = cfg.base / cov["csv"]
        if not path.exists():
            raise ConfigError(f"covering: missing input file {path}")
        return BilinearSystem(read_complex_csv(path))
    if "operator" in cov:
        sampler = cfg.require_sampler("covering from an operator")
        return build_adjoint_system(cfg.operators[cov["operator"]], 0, 0, sampler).as_bilinear()
    spec = cov.get("random", {})
    sampler = cfg.require_sampler("a random covering system")
    m, ell = spec.get("m", 8), spec.get("l", 8)
    rng = stream(sampler.seed, COVERING_OFFSET)
    return BilinearSystem(rng.standard_normal((m, ell)) + 1j * rng.standard_normal((m, ell)))


def cmd_covering(cfg, out):
    s = _covering_system(cfg)
    eps_grid = eps_or_default(cfg.covering.get("eps", cfg.eps))
    A = SemimetricSpace(s.d_A(), check=False)
    B = SemimetricSpace(s.d_B(), check=False)
    for label, X in (("A", A), ("B", B)):
        rows = [(e, g, "" if x is None else x) for e, g, x in covering_curve(X, eps_grid)]
        write_csv(out / f"covering_{label}.csv", ["eps", "greedy_size", "exact_size"], rows)
    audit, ok = [], True
    for e in eps_grid:
        net = greedy_net(A, e)
        low, high = net_audit(s, net, e)
        within = low >= -SANDWICH_SLACK and high <= 2 * e + SANDWICH_SLACK
        ok &= within
        audit.append((e, high, 2 * e, within))
    write_csv(out / "net_audit.csv", ["eps", "approx_error_max", "bound_2eps", "within_bound"], audit)
    print(f"covering: {s.shape[0]}x{s.shape[1]} system, {len(eps_grid)} eps values, sandwich {'ok' if ok else 'VIOLATED'}")
    return 0 if ok else 1


def cmd_compactness(cfg, out):
    if cfg.compactness is None:
        raise ConfigError("compactness needs a 'compactness' section naming an operator")
    sampler = cfg.require_sampler("compactness")
    comp = cfg.compactness
    T, eps_grid = comp["T"], comp["eps"]
    rows, failed = [], 0
    for theta in comp["theta"]:
        try:
            prof = compactness_profile(T, theta, eps_grid, sampler)
        except (SolverFailure, LatticeLabError) as exc:
            print(f"theta={theta!r}: failed ({exc})", file=sys.stderr)
            failed += 1
            rows.extend((theta, e, "failed", sampler.count, sampler.seed, "failed") for e in eps_grid)
            continue
        cover = dict(zip(prof.eps, prof.covering))
        for e, c in zip(prof.eps, prof.covering):
            monotone = all(c <= cover[f] for f in prof.eps if f < e)
            rows.append((theta, e, c, prof.sample_count, prof.seed, monotone))
    write_csv(out / "compactness.csv",
              ["theta", "eps", "covering_number", "sample_count", "seed", "monotone"], rows)
    print(f"compactness: {len(comp['theta'])} theta values, {failed} failed")
    bad = any(r[-1] is False for r in rows)
    return 1 if failed or bad else 0


COMMANDS = {"verify": cmd_verify, "covering": cmd_covering, "compactness": cmd_compactness}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = ExperimentConfig.from_file(args.config, seed=args.seed)
        out = resolve_out(args.out, cfg, os.environ)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "verify":
            return cmd_verify(cfg, out, args.suite)
        return COMMANDS[args.command](cfg, out)
    except ConfigError as exc:
        print(f"latticelab: config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
