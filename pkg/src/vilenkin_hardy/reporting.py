"""Serialization of constants, verification reports and run manifests.

Every real number becomes ``{"value": <decimal string at working precision>,
"float": <double>}`` so manifests diff cleanly across precisions while staying
easy to plot.  JSON documents carry ``schema: 1``.

CSV tables have fixed columns:

* constants: theorem, formula_id, is_sharp, value, value_float, gamma
* verify:    check, verdict, passed, expected_violation, target, target_float,
             gap, gap_float, n_ratios, last_ratio, last_ratio_float, seed
* sweep:     row, <grid keys...>, theorem, ok, value, value_float, check, error
"""

import csv
import dataclasses
import io
import json
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from . import __version__
from ._numeric import fmt, is_real
from .constants import ConstantResult
from .verify.report import VerificationReport

SCHEMA = 1

CONSTANT_COLUMNS = ("theorem", "formula_id", "is_sharp", "value", "value_float", "gamma")
VERIFY_COLUMNS = ("check", "verdict", "passed", "expected_violation", "target", "target_float", "gap", "gap_float",
                  "n_ratios", "last_ratio", "last_ratio_float", "seed")
SWEEP_TAIL = ("theorem", "ok", "value", "value_float", "check", "error")
VOLATILE = ("runtime", "timestamp")


def number(x):
    return {"value": fmt(x), "float": float(x)}


def encode(obj):
    """Plain JSON data for reals, reports, constants and containers."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return number(mpq(obj.numerator, obj.denominator))
    if is_real(obj):
        return number(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, VerificationReport):
        d = {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        d["passed"] = obj.passed
        return d
    if isinstance(obj, ConstantResult):
        return {"theorem": obj.theorem, "value": encode(obj.value), "is_sharp": obj.is_sharp,
                "formula_id": obj.formula_id, "gamma": encode(obj.gamma), "hypotheses": list(obj.hypotheses)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return str(obj)


def strip_volatile(data):
    """Drop wall-clock fields so that equal configs give equal payloads."""
    if isinstance(data, dict):
        return {k: strip_volatile(v) for k, v in data.items() if k not in VOLATILE}
    if isinstance(data, list):
        return [strip_volatile(v) for v in data]
    return data


@dataclasses.dataclass
class RunManifest:
    """Config echo, tool version, timestamp, encoded results and the overall outcome."""

    config: dict
    results: list
    passed: bool
    kind: str = "verify"
    version: str = __version__
    timestamp: str = ""
    schema: int = SCHEMA

    @classmethod
    def build(cls, config, results, passed, kind="verify"):
        return cls(config=encode(config), results=[encode(r) for r in results], passed=bool(passed), kind=kind,
                   timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"))

    def to_dict(self):
        return dataclasses.asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported manifest schema {d.get('schema')!r}")
        return cls(**d)

    def payload(self):
        """The reproducible part: everything except timestamps and runtimes."""
        return strip_volatile(self.to_dict())


def _cell(entry, key="value"):
    if isinstance(entry, dict) and key in entry:
        return entry[key]
    return "" if entry is None else entry


def constant_rows(results):
    for r in results:
        yield {"theorem": r["theorem"], "formula_id": r["formula_id"], "is_sharp": r["is_sharp"],
               "value": _cell(r["value"]), "value_float": _cell(r["value"], "float"),
               "gamma": _cell(r.get("gamma"))}


def verify_rows(results):
    for r in results:
        ratios = r.get("ratios") or []
        last = ratios[-1] if ratios else None
        yield {"check": r["theorem"], "verdict": r["verdict"], "passed": r["passed"],
               "expected_violation": r["expected_violation"],
               "target": _cell(r.get("target")), "target_float": _cell(r.get("target"), "float"),
               "gap": _cell(r.get("gap")), "gap_float": _cell(r.get("gap"), "float"),
               "n_ratios": len(ratios), "last_ratio": _cell(last), "last_ratio_float": _cell(last, "float"),
               "seed": "" if r.get("seed") is None else r["seed"]}


def to_csv(manifest):
    buf = io.StringIO()
    if manifest.kind == "constants":
        cols, rows = CONSTANT_COLUMNS, list(constant_rows(manifest.results))
    elif manifest.kind == "sweep":
        keys = manifest.config.get("grid_keys", [])
        cols = ("row", *keys, *SWEEP_TAIL)
        rows = [{c: _cell(r.get("value"), "float") if c == "value_float" else _cell(r.get(c)) for c in cols}
                for r in manifest.results]
    else:
        cols, rows = VERIFY_COLUMNS, list(verify_rows(manifest.results))
    w = csv.DictWriter(buf, fieldnames=list(cols), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def render(manifest, fmt_name):
    if fmt_name == "csv":
        return to_csv(manifest)
    return manifest.to_json() + "\n"
