"""Experiment configuration: schema validation and name resolution."""

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from ._validation import check_eps, check_theta
from .calderon import CoupleSpec
from .couple_ops import OperatorOnCouple, SamplerConfig
from .exceptions import LatticeLabError
from .io import norm_from_record, read_complex_csv
from .lattice import FiniteMeasureSpace

SUITES = (
    "associate",
    "second_associate",
    "sum_intersection",
    "calderon",
    "lozanovskii",
    "duality",
    "support",
    "semimetric",
)

VERIFY_DEFAULTS = {"random_instances": 6, "vectors": 2, "max_n": 6, "tolerance": 1e-5}


class ConfigError(LatticeLabError):
    """The configuration is malformed or refers to something that does not exist."""


def load_schema():
    text = resources.files("latticelab").joinpath("data/config.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def default_config_path():
    return resources.files("latticelab").joinpath("data/default_config.json")


@dataclass
class ExperimentConfig:
    norms: dict = field(default_factory=dict)
    couples: dict = field(default_factory=dict)
    thetas: dict = field(default_factory=dict)
    operators: dict = field(default_factory=dict)
    sampler: SamplerConfig = None
    eps: tuple = ()
    suites: tuple = SUITES
    verify: dict = field(default_factory=lambda: dict(VERIFY_DEFAULTS))
    covering: dict = field(default_factory=dict)
    compactness: dict = None
    out: str = None
    base: Path = Path(".")

    @property
    def seed(self):
        return None if self.sampler is None else self.sampler.seed

    def require_sampler(self, what):
        if self.sampler is None:
            raise ConfigError(f"{what} samples points, so the config needs sampler.seed")
        return self.sampler

    @classmethod
    def from_file(cls, path, seed=None):
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(raw, base=path.parent, seed=seed)

    @classmethod
    def from_dict(cls, raw, base=".", seed=None):
        try:
            jsonschema.validate(raw, load_schema())
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ConfigError(f"config invalid at {where}: {exc.message}") from None
        try:
            return cls._resolve(raw, Path(base), seed)
        except ConfigError:
            raise
        except (ValueError, TypeError, KeyError, OSError) as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def _resolve(cls, raw, base, seed):
        cfg = cls(base=base)
        space = FiniteMeasureSpace(raw["space"]["mu"]) if "space" in raw else None
        for name, rec in raw.get("norms", {}).items():
            try:
                cfg.norms[name] = norm_from_record(rec, space)
            except ValueError as exc:
                raise ConfigError(f"norm {name!r}: {exc}") from None

        def lookup(table, name, kind):
            if name not in table:
                raise ConfigError(f"unknown {kind} {name!r}")
            return table[name]

        for name, rec in raw.get("couples", {}).items():
            X0, X1 = lookup(cfg.norms, rec["X0"], "norm"), lookup(cfg.norms, rec["X1"], "norm")
            if X0.space != X1.space:
                raise ConfigError(f"couple {name!r}: endpoints live on different measure spaces")
            cfg.couples[name] = CoupleSpec(X0, X1)
            cfg.thetas[name] = tuple(_theta(t, f"couple {name!r}") for t in rec.get("theta", [0.5]))

        for name, rec in raw.get("operators", {}).items():
            G = lookup(cfg.couples, rec["G"], "couple")
            X = lookup(cfg.couples, rec["X"], "couple")
            if "diag" in rec:
                T = OperatorOnCouple.diagonal(rec["diag"], G, X)
            else:
                path = base / rec["csv"]
                if not path.exists():
                    raise ConfigError(f"operator {name!r}: missing input file {path}")
                T = OperatorOnCouple(read_complex_csv(path), G, X)
            cfg.operators[name] = T.normalize() if rec.get("normalize") else T

        if "sampler" in raw:
            s = raw["sampler"]
            cfg.sampler = SamplerConfig(count=s.get("count", 500), seed=s["seed"])
        if seed is not None:
            cfg.sampler = SamplerConfig(count=cfg.sampler.count if cfg.sampler else 500, seed=int(seed))
        cfg.eps = tuple(check_eps(e) for e in raw.get("eps", []))

        suites = raw.get("suites", list(SUITES))
        unknown = sorted(set(suites) - set(SUITES))
        if unknown:
            raise ConfigError(f"unknown suite(s) {unknown}; choose from {list(SUITES)}")
        cfg.suites = tuple(s for s in SUITES if s in suites)
        cfg.verify = {**VERIFY_DEFAULTS, **raw.get("verify", {})}

        cov = raw.get("covering", {})
        sources = [k for k in ("random", "csv", "operator") if k in cov]
        if len(sources) > 1:
            raise ConfigError(f"covering: give one source, not {sources}")
        if "operator" in cov:
            lookup(cfg.operators, cov["operator"], "operator")
        cfg.covering = dict(cov)

        if "compactness" in raw:
            comp = dict(raw["compactness"])
            T = lookup(cfg.operators, comp["operator"], "operator")
            G_name = raw["operators"][comp["operator"]]["G"]
            thetas = comp.get("theta", cfg.thetas[G_name])
            comp["theta"] = tuple(_theta(t, "compactness") for t in thetas)
            comp["eps"] = tuple(check_eps(e) for e in comp.get("eps", cfg.eps))
            if not comp["eps"]:
                raise ConfigError("compactness needs an eps grid")
            comp["T"] = T
            cfg.compactness = comp
        cfg.out = raw.get("out")
        return cfg


def _theta(t, where):
    try:
        return check_theta(t)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def resolve_out(cli_out, cfg, env):
    """Output directory: the flag, then LATTICELAB_OUT, then the config, then ./latticelab_out."""
    for cand in (cli_out, env.get("LATTICELAB_OUT"), cfg.out):
        if cand:
            return Path(cand)
    return Path("latticelab_out")


def eps_or_default(eps):
    eps = tuple(eps)
    return eps if eps else (0.5, 0.2, 0.1, 0.05)

