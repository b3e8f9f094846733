import json
import subprocess
import sys
from pathlib import Path

import pytest

from dqsplit.cli import main

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


GOLDEN = [
    ("split", "radical_index8", 0, True),
    ("split", "log_hint", 0, True),
    ("split", "airy_type", 0, True),
    ("riccati", "airy_type", 0, "complete"),
    ("riccati", "log_hint", 0, "complete"),
    ("riccati", "criteria_degree", 0, "not-applicable"),
    ("standard", "radical_index8", 1, "not-standard"),
    ("standard", "criteria_witness", 0, "standard"),
    ("standard", "constant_field", 0, "inconclusive"),
    ("criteria", "criteria_degree", 1, "negative"),
    ("criteria", "criteria_square", 1, "negative"),
    ("criteria", "criteria_witness", 0, "positive"),
    ("criteria", "constant_field", 0, "positive"),
]


@pytest.mark.parametrize("cmd, problem, code, status", GOLDEN)
def test_golden_exit_codes(capsys, cmd, problem, code, status):
    got, doc = run_json(capsys, cmd, PROBLEMS / f"{problem}.ini")
    assert got == code
    assert (doc["verified"] if cmd == "split" else doc["status"]) == status


def test_split_radical_text(capsys):
    code, out, _ = run(capsys, "split", PROBLEMS / "radical_index8.ini")
    assert code == 0
    assert "tower: radical n=8 of t" in out
    assert "det F = 1" in out and "verified: true" in out and "trdeg: 0" in out


def test_split_log_hint_note(capsys):
    code, doc = run_json(capsys, "split", PROBLEMS / "log_hint.ini")
    assert code == 0 and doc["trdeg"] == 1 and doc["verified"]
    assert any("{0}" in n for n in doc["notes"])


def test_riccati_airy(capsys):
    code, doc = run_json(capsys, "riccati", PROBLEMS / "airy_type.ini")
    assert code == 0
    assert doc["equation"] == "X' = X^2 - t"
    assert doc["solutions"] == []


def test_riccati_sqrt_pattern(capsys):
    code, doc = run_json(capsys, "riccati", PROBLEMS / "sqrt_pattern.ini")
    assert code == 0 and doc["pattern"] is not None and len(doc["pattern"]) == 2


def test_criteria_witness_evidence(capsys):
    code, doc = run_json(capsys, "criteria", PROBLEMS / "criteria_witness.ini")
    assert code == 0
    first = doc["verdicts"][0]
    assert first["verdict"] == "FinitelySplit" and first["evidence"]["checked"] is True
    assert first["tag"]
    assert doc["verdicts"][1]["verdict"] == "NoVerdict"


def test_criteria_budget_reported(capsys):
    code, doc = run_json(capsys, "criteria", PROBLEMS / "criteria_degree.ini", "--budget", "3")
    assert doc["verdicts"][0]["evidence"]["reason"] == "candidate budget reached"


def test_criteria_conjunction_flag(capsys):
    code, doc = run_json(capsys, "criteria", PROBLEMS / "criteria_degree.ini", "--conjunction")
    assert doc["mode"] == "conjunction"
    assert code == 0 and doc["status"] == "inconclusive"


def test_verify_round_trip_and_tamper(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, "split", PROBLEMS / "radical_index8.ini", "--out", cert)
    assert code == 0
    code, doc = run_json(capsys, "verify", cert)
    assert code == 0 and doc["passed"]

    data = json.loads(cert.read_text())
    data["F"][1][0] = "theta^6/t"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, doc = run_json(capsys, "verify", bad)
    assert code == 1 and doc["failing_entry"] == [2, 1]

    data = json.loads(cert.read_text())
    data["det_F"] = "2"
    bad.write_text(json.dumps(data))
    code, doc = run_json(capsys, "verify", bad)
    assert code == 1 and not doc["passed"]

    data = json.loads(cert.read_text())
    data["P"][0][0] = "0"
    bad.write_text(json.dumps(data))
    code, doc = run_json(capsys, "verify", bad)
    assert code == 1 and any("stored P" in m for m in doc["messages"])

    bad.write_text("{ not json")
    code, doc = run_json(capsys, "verify", bad)
    assert code == 1 and doc["status"] == "failed"


def test_deterministic_documents(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run(capsys, "split", PROBLEMS / "log_hint.ini", "--out", path)
    assert a.read_bytes() == b.read_bytes()
    _, out1, _ = run(capsys, "criteria", PROBLEMS / "criteria_square.ini", "--json")
    _, out2, _ = run(capsys, "criteria", PROBLEMS / "criteria_square.ini", "--json")
    assert out1 == out2


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["split"],
    ["split", "PROBLEMS/radical_index8.ini", "--budget", "0"],
    ["split", "PROBLEMS/radical_index8.ini", "--n-max", "x"],
    ["split", "PROBLEMS/missing.ini"],
    ["verify", "PROBLEMS/missing.json"],
])
def test_usage_errors(capsys, argv):
    argv = [a.replace("PROBLEMS", str(PROBLEMS)) for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_bad_problem_file(capsys, tmp_path):
    f = tmp_path / "p.ini"
    f.write_text("[field]\nt_prime = 1\n")
    code, _, err = run(capsys, "split", f)
    assert code == 2 and "missing section [algebra]" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dqsplit.cli", "riccati", str(PROBLEMS / "airy_type.ini")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "equation: X' = X^2 - t"
