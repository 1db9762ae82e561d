"""Reading norm records and complex tables, writing bit-stable CSV and JSON."""

import csv
import json
from pathlib import Path

import numpy as np

from .lattice import FiniteMeasureSpace, WeightedLp


def parse_p(value):
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity"):
            return np.inf
        raise ValueError(f"p must be a number or 'inf' (got {value!r})")
    return float(value)


def norm_from_record(record, space=None):
    """A WeightedLp from ``{"mu": [...], "w": [...], "p": number|"inf", "mask": [...]}``.

    ``mu`` may be omitted when ``space`` is given; ``w`` defaults to ones and
    ``mask`` (indices or booleans) to the whole space.
    """
    if "mu" in record:
        rec_space = FiniteMeasureSpace(record["mu"])
        if space is not None and rec_space != space:
            raise ValueError("norm record measure differs from the declared space")
        space = rec_space
    if space is None:
        raise ValueError("norm record needs 'mu' when no space is declared")
    if "p" not in record:
        raise ValueError("norm record needs 'p'")
    return WeightedLp(space, parse_p(record["p"]), record.get("w"), record.get("mask"))


def norm_to_record(X):
    p = "inf" if X.p == np.inf else X.p
    return {
        "mu": X.space.mu.tolist(),
        "w": X.w.tolist(),
        "p": p,
        "mask": sorted(int(k) for k in np.flatnonzero(X.mask)),
    }


def read_complex_csv(path):
    """A complex matrix stored as consecutive ``re, im`` column pairs.

    A header row is skipped when its first field is not numeric.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if rows:
        try:
            float(rows[0][0])
        except ValueError:
            rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.array([[float(c) for c in r] for r in rows])
    if data.shape[1] % 2:
        raise ValueError(f"{path}: expected an even number of columns (re, im pairs)")
    return data[:, 0::2] + 1j * data[:, 1::2]


def write_complex_csv(path, M):
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    header = [f"{part}{j}" for j in range(M.shape[1]) for part in ("re", "im")]
    rows = [[v for z in row for v in (z.real, z.imag)] for row in M]
    write_csv(path, header, rows)


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        # repr gives the shortest string that round-trips
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])
    return path


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if np.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    return v


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_jsonable(payload), indent=2, ensure_ascii=False) + "\n"
    path.write_text(text, encoding="utf-8")
    return path
