import csv
import io
import json
import subprocess
import sys

import pytest

from heckedist.cli import dumps, run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text), text


def test_trace_with_breakdown():
    code, doc, _ = call_json("trace", "--level", "1", "--weight", "12", "--n", "2", "--breakdown")
    assert code == 0
    assert doc["result"]["total"] == "-24"
    assert doc["result"]["breakdown"]["a2"] == {"num": "-23", "den": "1"}
    assert set(doc) == {"command", "params", "result", "versions"}
    assert doc["versions"]["schema"] == "1"


def test_dim():
    code, doc, _ = call_json("dim", "--level", "11", "--weight", "2")
    assert (code, doc["result"]["dimension"]) == (0, 1)


@pytest.mark.parametrize(
    "argv, reason",
    [
        (("trace", "--level", "2", "--weight", "12", "--n", "2"), "n_not_coprime_to_level"),
        (("trace", "--weight", "13", "--n", "2"), "odd_or_small_weight"),
        (("discrepancy", "--weight", "24", "--primes", "2", "--box", "1,0"), "bad_box"),
        (("discrepancy", "--weight", "24", "--primes", "2,3", "--box", "-1,1"), "dimension_mismatch"),
    ],
)
def test_domain_errors_exit_two(argv, reason):
    code, doc, _ = call_json(*argv)
    assert code == 2
    assert doc["result"]["error"]["reason"] == reason


@pytest.mark.parametrize("argv", [(), ("nope",), ("trace", "--weight", "12"), ("trace", "--n", "x", "--weight", "12")])
def test_usage_errors_exit_one(argv):
    code, doc, _ = call_json(*argv)
    assert code == 1
    assert doc["result"]["error"]["reason"] == "usage"


@pytest.mark.parametrize(
    "argv",
    [
        ("trace", "--level", "11", "--weight", "2", "--n", "3", "--breakdown"),
        ("dim", "--level", "30", "--weight", "8"),
        ("moments", "--prime", "3", "--weight", "24", "--max-m", "4"),
        ("measure", "--prime", "3", "--box", "-1,1"),
        ("measure", "--prime", "inf"),
        ("eigen", "--weight", "36", "--primes", "2,3", "--seed", "7"),
        ("joint", "--weight", "24", "--primes", "2,3", "--exponents", "2,1"),
        ("discrepancy", "--weights", "24..30", "--primes", "2", "--box", "-1,1"),
        ("discrepancy", "--weight", "36", "--primes", "2,3", "--box", "-2,0,-1,2"),
    ],
)
def test_json_round_trip(argv):
    code, doc, text = call_json(*argv)
    assert code == 0
    assert dumps(json.loads(text)) + "\n" == text
    assert doc["command"] == argv[0]


def test_seed_is_echoed():
    _, doc, _ = call_json("eigen", "--weight", "36", "--primes", "2,3", "--seed", "7")
    assert doc["params"]["seed"] == 7 and doc["result"]["seed"] == 7


def test_moments_scaled_values():
    _, doc, _ = call_json("moments", "--prime", "2", "--weight", "12", "--max-m", "2")
    e = doc["result"]["entries"][1]
    assert e["int"] == "-24" and e["log2_scale_num"] == 11 and e["base"] == 2
    assert e["float"] == pytest.approx(-0.530330, abs=1e-6)


def test_csv_output():
    code, text = call("--format", "csv", "discrepancy", "--weights", "24..28", "--primes", "2", "--box", "-1,1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["weight"] for r in rows] == ["24", "26", "28"]
    code, text = call("trace", "--weight", "12", "--n", "3", "--format", "csv")
    assert code == 0 and list(csv.DictReader(io.StringIO(text)))[0]["total"] == "252"


def test_verify_passes():
    code, doc, _ = call_json("verify")
    assert code == 0 and doc["result"]["passed"]


def test_verify_reports_failure(monkeypatch):
    from heckedist import verify

    def broken():
        raise AssertionError("deliberate")

    monkeypatch.setattr(verify, "CHECKS", verify.CHECKS + [broken])
    code, doc, _ = call_json("verify")
    assert code == 3 and not doc["result"]["passed"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "heckedist.cli", "dim", "--level", "1", "--weight", "24"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["dimension"] == 2
