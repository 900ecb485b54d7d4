import csv
import io
import json
import subprocess
import sys

import pytest

from aperylike.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_terms_json(capsys):
    code, out, _ = run(capsys, "terms", "D", "--n-max", "4", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == 1 and doc["command"] == "terms"
    assert [r["value"] for r in doc["records"]] == [1, 3, 19, 147, 1251]


def test_terms_eta_sources(capsys):
    _, out, _ = run(capsys, "terms", "eta", "--n-max", "3", "--source", "recurrence", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["value"]) for r in rows] == [1, 5, 35, 275]
    _, out, _ = run(capsys, "terms", "eta", "--n-max", "3", "--format", "csv")
    assert [int(r["value"]) for r in csv.DictReader(io.StringIO(out))] == [1, 10, 70, 550]


def test_transform(capsys):
    code, out, _ = run(capsys, "transform", "gamma", "--alpha", "5", "--n-max", "4", "--format", "json")
    assert [r["value"] for r in json.loads(out)["records"]] == [1, 0, 48, 600, 13176]


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "gamma", "--alpha", "5", "--n-max", "100", "--format", "json")
    recs = json.loads(out)["records"]
    assert code == 0
    assert recs[0]["M"] == 24 and recs[0]["status"] == "Pass"
    assert recs[1]["check_name"] == "theorem1" and recs[1]["radical"] == 6


def test_tables_text(capsys):
    code, out, _ = run(capsys, "tables")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 16
    assert all(line.rstrip().endswith("True") for line in lines[1:])


def test_tables_recurrence(capsys):
    code, out, _ = run(capsys, "tables", "--eta-normalization", "recurrence", "--format", "json")
    rows = {r["sequence"]: (r["u1"], r["N"]) for r in json.loads(out)["records"]}
    assert code == 0 and rows["eta"] == (5, 10) and rows["s18"] == (6, 6)


def test_gauss(capsys):
    code, out, _ = run(capsys, "gauss", "D", "--n-max", "200", "--format", "json")
    recs = json.loads(out)["records"]
    assert code == 0 and [r["alpha"] for r in recs] == [0, 3]


def test_recurrence(capsys):
    code, out, _ = run(capsys, "recurrence", "D", "--alpha", "3")
    assert code == 0 and "(-75*n^2 + 225*n - 150)*v[n-3] = 0" in out


def test_verify_only(capsys):
    code, out, err = run(capsys, "verify", "--only", "tables,gf", "--format", "json")
    recs = json.loads(out)["records"]
    assert code == 0 and {r["group"] for r in recs} == {"tables", "gf"}
    assert all("duration" not in r for r in recs)
    assert "0 failed" in err


def test_verify_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "--only", "tables", "--only", "special", "--format", "json")
    _, b, _ = run(capsys, "verify", "--only", "special,tables", "--format", "json", "--parallelism", "2")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["terms", "nosuch"],
    ["terms", "D", "--n-max", "200001"],
    ["terms", "D", "--n-max", "-1"],
    ["verify", "--only", "bogus"],
    ["gauss", "D", "--primes", "two"],
    ["certify", "D", "--n-max", "2"],
    ["transform", "D"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_cache_round_trip(capsys, tmp_path):
    cache = tmp_path / "terms.csv"
    run(capsys, "terms", "gamma", "--n-max", "6", "--cache", str(cache))
    assert cache.exists()
    _, out, _ = run(capsys, "terms", "gamma", "--n-max", "4", "--cache", str(cache), "--format", "json")
    assert [r["value"] for r in json.loads(out)["records"]] == [1, 5, 73, 1445, 33001]


def test_corrupt_cache(capsys, tmp_path):
    cache = tmp_path / "terms.csv"
    cache.write_text("gamma,canonical,0,1\ngamma,canonical,2,73\n")
    code, _, err = run(capsys, "terms", "gamma", "--cache", str(cache))
    assert code == 2 and "cache" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "aperylike", "terms", "s10", "--n-max", "2", "--format", "csv"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[-1] == "s10,canonical,2,18"
