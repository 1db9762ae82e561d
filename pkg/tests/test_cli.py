import csv
import json
from pathlib import Path

import numpy as np
import pytest

from latticelab import FiniteMeasureSpace, WeightedLp
from latticelab.cli import main
from latticelab.config import ConfigError, ExperimentConfig, default_config_path, load_schema, resolve_out
from latticelab.io import norm_from_record, norm_to_record, parse_p, write_complex_csv

ROOT = Path(__file__).resolve().parents[1]


def default_raw():
    return json.loads(default_config_path().read_text(encoding="utf-8"))


def write_config(tmp_path, raw, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw), encoding="utf-8")
    return path


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def small_raw():
    raw = default_raw()
    raw["verify"] = {"random_instances": 2, "vectors": 1, "max_n": 4, "tolerance": 1e-5}
    return raw


# --- io --------------------------------------------------------------------------------


def test_parse_p():
    assert parse_p("inf") == np.inf and parse_p(2) == 2.0
    with pytest.raises(ValueError, match="p < 1"):
        norm_from_record({"p": 0.5}, FiniteMeasureSpace.uniform(2))


def test_norm_record_roundtrip():
    S = FiniteMeasureSpace([1.0, 2.0, 0.5])
    X = WeightedLp(S, np.inf, [1.0, 3.0, 2.0], mask=[0, 2])
    rec = norm_to_record(X)
    assert rec["p"] == "inf" and rec["mask"] == [0, 2]
    Y = norm_from_record(rec)
    f = np.array([1.0, 0.0, -4.0])
    assert Y(f) == X(f) == 8.0


# --- config ----------------------------------------------------------------------------------


def test_docs_schema_matches_package():
    assert json.loads((ROOT / "docs" / "config.schema.json").read_text(encoding="utf-8")) == load_schema()


def test_default_config_resolves():
    cfg = ExperimentConfig.from_file(default_config_path())
    assert set(cfg.couples) == {"l1_linf", "weighted", "masked"}
    assert cfg.compactness["theta"] == (0.25, 0.5, 0.75)
    assert cfg.seed == 7


def test_config_errors(tmp_path):
    raw = default_raw()
    raw["couples"]["bad"] = {"X0": "l1", "X1": "nope"}
    with pytest.raises(ConfigError, match="unknown norm"):
        ExperimentConfig.from_dict(raw)
    raw = default_raw()
    raw["suites"] = ["associate", "bogus"]
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(raw)
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(tmp_path / "absent.json")


def test_out_precedence(tmp_path):
    cfg = ExperimentConfig.from_dict({**default_raw(), "out": "from_config"})
    assert resolve_out("flag", cfg, {"LATTICELAB_OUT": "env"}) == Path("flag")
    assert resolve_out(None, cfg, {"LATTICELAB_OUT": "env"}) == Path("env")
    assert resolve_out(None, cfg, {}) == Path("from_config")
    cfg.out = None
    assert resolve_out(None, cfg, {}) == Path("latticelab_out")


# --- verify ----------------------------------------------------------------------------------


def test_verify_default_config(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["verify", "--config", str(default_config_path()), "--out", str(out)]) == 0
    report = json.loads((out / "verify_report.json").read_text(encoding="utf-8"))
    assert [r["suite"] for r in report] == list(ExperimentConfig().suites)
    assert all(r["pass"] and r["max_relative_error"] <= 1e-5 for r in report)
    assert len(capsys.readouterr().out.strip().splitlines()) == len(report)


def test_verify_single_suite(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path, small_raw())
    assert main(["verify", "--config", str(cfg), "--out", str(out), "--suite", "lozanovskii"]) == 0
    report = json.loads((out / "verify_report.json").read_text(encoding="utf-8"))
    assert len(report) == 1 and report[0]["suite"] == "lozanovskii"


def test_verify_reports_identical(tmp_path):
    cfg = write_config(tmp_path, small_raw())
    texts = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        assert main(["verify", "--config", str(cfg), "--out", str(out), "--suite", "associate"]) == 0
        texts.append((out / "verify_report.json").read_bytes())
    assert texts[0] == texts[1]


def test_bad_exponent_exit_2(tmp_path, capsys):
    raw = default_raw()
    raw["norms"]["l1"]["p"] = 0.5
    assert main(["verify", "--config", str(write_config(tmp_path, raw)), "--out", str(tmp_path)]) == 2
    assert "p < 1" in capsys.readouterr().err


def test_verify_needs_seed(tmp_path):
    raw = small_raw()
    del raw["sampler"]
    del raw["compactness"]
    assert main(["verify", "--config", str(write_config(tmp_path, raw)), "--out", str(tmp_path)]) == 2


def test_env_out(tmp_path, monkeypatch):
    monkeypatch.setenv("LATTICELAB_OUT", str(tmp_path / "env_out"))
    assert main(["verify", "--config", str(write_config(tmp_path, small_raw())), "--suite", "semimetric"]) == 0
    assert (tmp_path / "env_out" / "verify_report.json").exists()


# --- covering -----------------------------------------------------------------------------------


def test_covering_random(tmp_path):
    out = tmp_path / "out"
    assert main(["covering", "--config", str(default_config_path()), "--out", str(out)]) == 0
    for label in "AB":
        rows = read_rows(out / f"covering_{label}.csv")
        assert [float(r["eps"]) for r in rows] == [4.0, 3.0, 2.0, 1.0, 0.5]
        assert all(int(r["exact_size"]) <= int(r["greedy_size"]) for r in rows)
    audit = read_rows(out / "net_audit.csv")
    assert all(r["within_bound"] == "true" for r in audit)


def test_covering_single_eps(tmp_path):
    raw = default_raw()
    raw["covering"]["eps"] = [0.7]
    out = tmp_path / "out"
    assert main(["covering", "--config", str(write_config(tmp_path, raw)), "--out", str(out)]) == 0
    assert len(read_rows(out / "covering_A.csv")) == 1 and len(read_rows(out / "covering_B.csv")) == 1


def test_covering_identical_rows(tmp_path):
    write_complex_csv(tmp_path / "h.csv", np.tile([1.0, 2j, -3.0], (4, 1)))
    raw = default_raw()
    raw["covering"] = {"csv": "h.csv", "eps": [0.1]}
    out = tmp_path / "out"
    assert main(["covering", "--config", str(write_config(tmp_path, raw)), "--out", str(out)]) == 0
    assert read_rows(out / "covering_A.csv")[0]["greedy_size"] == "1"


def test_covering_missing_csv(tmp_path, capsys):
    raw = default_raw()
    raw["covering"] = {"csv": "absent.csv"}
    assert main(["covering", "--config", str(write_config(tmp_path, raw)), "--out", str(tmp_path)]) == 2
    assert "absent.csv" in capsys.readouterr().err


# --- compactness ----------------------------------------------------------------------------------


def compactness_raw(diag, theta=(0.25, 0.5, 0.75), eps=(2.0, 1.0, 0.5, 0.25, 0.1)):
    n = len(diag)
    return {
        "space": {"mu": [1.0] * n},
        "norms": {"l1": {"p": 1}, "linf": {"p": "inf"}},
        "couples": {"c": {"X0": "l1", "X1": "linf"}},
        "operators": {"T": {"diag": list(diag), "G": "c", "X": "c"}},
        "sampler": {"count": 200, "seed": 3},
        "compactness": {"operator": "T", "theta": list(theta), "eps": list(eps)},
    }


def test_compactness_zero_operator(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path, compactness_raw([0.0] * 4))
    assert main(["compactness", "--config", str(cfg), "--out", str(out)]) == 0
    rows = read_rows(out / "compactness.csv")
    assert len(rows) == 15 and all(r["covering_number"] == "1" for r in rows)


def test_compactness_diag_monotone(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path, compactness_raw(2.0 ** -np.arange(8)))
    assert main(["compactness", "--config", str(cfg), "--out", str(out)]) == 0
    rows = read_rows(out / "compactness.csv")
    assert all(r["monotone"] == "true" and r["seed"] == "3" and r["sample_count"] == "200" for r in rows)
    for theta in ("0.25", "0.5", "0.75"):
        sizes = [int(r["covering_number"]) for r in rows if r["theta"] == theta]
        assert sizes == sorted(sizes)


def test_compactness_theta_one_exit_2(tmp_path):
    cfg = write_config(tmp_path, compactness_raw([1.0, 0.5], theta=(1.0,)))
    assert main(["compactness", "--config", str(cfg), "--out", str(tmp_path)]) == 2


def test_seed_override(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path, compactness_raw([1.0, 0.5], theta=(0.5,)))
    assert main(["compactness", "--config", str(cfg), "--out", str(out), "--seed", "11"]) == 0
    assert {r["seed"] for r in read_rows(out / "compactness.csv")} == {"11"}
