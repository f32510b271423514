import csv
import io
import json
import subprocess
import sys

import pytest

from vilenkin_hardy import cli
from vilenkin_hardy.verify import VerificationReport


def run(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "vilenkin_hardy", *args], capture_output=True, text=True, cwd=cwd)


def payload(text):
    d = json.loads(text)
    d.pop("timestamp")
    for r in d["results"]:
        r.pop("runtime", None)
    return d


def test_constants_json():
    p = run("constants", "--theorem", "hardy-strong", "--base", "2", "--r", "2", "--alpha", "0")
    assert p.returncode == 0
    d = json.loads(p.stdout)
    assert d["kind"] == "constants" and d["passed"]
    assert d["results"][0]["value"]["value"].startswith("1.70710678118654752440084436210484903928")


def test_invalid_config_writes_nothing(tmp_path):
    out = tmp_path / "out.json"
    p = run("constants", "--theorem", "hardy-strong", "--r", "2", "--alpha", "1", "-o", str(out))
    assert p.returncode == 2
    assert "alpha < r(1-delta)-1" in p.stderr
    assert not out.exists()


@pytest.mark.parametrize("args", [
    ["verify", "mc-kernel", "--samples", "10"],
    ["verify", "weighted-necessity"],
    ["verify", "functional", "--kind", "hls", "--lam", "2", "--r", "2"],
    ["constants", "--theorem", "hlp", "--precision", "20", "--r", "2", "--alpha", "0"],
    ["sweep", "--theorem", "hlp", "--grid", "r=2", "--grid", "r=3"],
    ["sweep", "--theorem", "hlp", "--grid", "zeta=1"],
])
def test_config_errors(args):
    assert run(*args).returncode == 2


def test_negative_value_needs_equals():
    assert run("verify", "weighted-necessity", "--unbalanced", "--alpha-shift", "-1/2").returncode == 2
    p = run("verify", "weighted-necessity", "--unbalanced", "--alpha-shift=-1/2")
    assert p.returncode == 0
    assert json.loads(p.stdout)["results"][0]["details"]["n"] == list(range(-1, -11, -1))


def test_verify_is_deterministic(tmp_path):
    args = ("verify", "mc-riesz", "--samples", "5000", "--seed", "3")
    a, b = run(*args), run(*args)
    assert a.returncode == b.returncode == 0
    assert payload(a.stdout) == payload(b.stdout)


def test_verify_csv_to_file(tmp_path):
    out = tmp_path / "r.csv"
    p = run("verify", "hardy-sharpness", "--base", "3", "--n-max", "8", "--format", "csv", "-o", str(out))
    assert p.returncode == 0 and "[ok]" in p.stderr
    rows = list(csv.DictReader(out.open()))
    assert rows[0]["check"] == "HardyStrong" and rows[0]["verdict"] == "converging"


def test_sweep_reparam_check():
    p = run("sweep", "--theorem", "hlp", "--base", "3", "--Q", "2", "--grid", "alpha=-1/2:1/2:3",
            "--grid", "r=2,3", "--check", "reparam", "--format", "csv", "--jobs", "2")
    assert p.returncode == 0
    rows = list(csv.DictReader(io.StringIO(p.stdout)))
    assert [r["row"] for r in rows] == [str(i) for i in range(6)]
    assert all(r["ok"] == "True" and r["check"] == "True" for r in rows)
    assert rows[2]["value"].startswith("1.7777777777")


def test_sweep_rows_record_violations():
    p = run("sweep", "--theorem", "hardy-strong", "--grid", "alpha=0,5", "--r", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(p.stdout)))
    assert p.returncode == 0
    assert rows[0]["ok"] == "True" and rows[1]["ok"] == "False" and "hypothesis" in rows[1]["error"]


def test_failed_verdict_exits_3_and_still_writes(tmp_path, monkeypatch):
    bad = VerificationReport("x", {}, {}, verdict="violated")
    monkeypatch.setattr(cli, "plan_verify", lambda cfg: (lambda: [bad]))
    out = tmp_path / "m.json"
    code = cli.main(["verify", "hardy-sharpness", "-o", str(out)])
    assert code == 3
    assert json.loads(out.read_text())["passed"] is False


def test_parse_grid():
    assert cli.parse_grid(["r=1:2:3"]) == [("r", [1, 1.5, 2])]
    with pytest.raises(cli.ConfigError):
        cli.parse_grid(["r"])
    with pytest.raises(cli.ConfigError):
        cli.parse_grid(["r=a,b"])
