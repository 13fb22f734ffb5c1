import json
import subprocess
import sys
from pathlib import Path

import pytest

from krall.cli import catalog_names, main

DATA = Path(__file__).parent / "data"


def run(*argv):
    proc = subprocess.run([sys.executable, "-m", "krall.cli", *argv], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def write(tmp_path, spec) -> str:
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(spec))
    return str(p)


def test_list_examples(capsys):
    assert main(["list-examples"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) >= 12
    assert len(catalog_names()) == len(lines)


@pytest.mark.parametrize("name", ["meixner-classical", "krall-meixner-11", "exceptional-meixner-11", "hahn-deleted-A0"])
def test_verify_catalog_entries_pass(name, capsys):
    assert main(["verify", name, "--json", "--deterministic", "--n-max", "5"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["checks"] and all(c["status"] in ("pass", "skipped") for c in rep["checks"])


def test_inadmissible_needs_flag():
    assert main(["verify", "krall-meixner-inadmissible"]) == 1
    assert main(["verify", "krall-meixner-inadmissible", "--expect-inadmissible"]) == 0


def test_schema_errors_exit_2(tmp_path):
    assert main(["verify", write(tmp_path, {"family": "nope"})]) == 2
    assert main(["verify", write(tmp_path, {"family": "meixner", "a": "1", "c": 3})]) == 2
    assert main(["verify", write(tmp_path, {"family": "krall-meixner", "F1": [2, 1], "F2": [1], "a": "1/2", "c_hat": -1})]) == 2
    assert main(["verify", str(tmp_path / "missing-entry.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", str(bad)]) == 2


def test_degenerate_exit_3(tmp_path):
    spec = {"family": "krall-meixner", "F1": [1], "F2": [1], "a": "1/2", "c_hat": 0}
    assert main(["verify", write(tmp_path, spec)]) == 3


def test_deterministic_output_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        code, _, _ = run("verify", "laguerre-example", "--json", "--deterministic", "--out", str(out))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert "runtime" not in a.read_text()


def test_reproduce_matches_reference_bytes():
    code, out, err = run("reproduce", "laguerre-example", "--json", "--deterministic")
    assert code == 0, err
    assert out == (DATA / "laguerre-example.json").read_text()


def test_reproduce_table_mode():
    code, out, _ = run("reproduce", "laguerre-example", "--deterministic")
    assert code == 0 and out.rstrip().endswith("overall: PASS")


def test_find_operator_json(capsys):
    assert main(["find-operator", "meixner-classical", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["predicted_r"] == 1 and data["out_of_sample_ok"]
    assert data["operator"] is not None


def test_find_operator_reports_failure(capsys):
    assert main(["find-operator", "krall-meixner-11", "--r", "1"]) == 1
    assert "no confirmed operator" in capsys.readouterr().err
