import io
import json
import subprocess
import sys

import pytest

from qalg import __version__
from qalg.algebra import check_algebra
from qalg.cli import main
from qalg.fileio import read_algebra


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


def test_info(fixtures):
    code, rep = run_json("info", fixtures / "lambda_q2_Q.json")
    assert code == 0
    r = rep["results"]
    assert r["radical_layers"] == [4, 3, 1]
    assert r["frobenius"] == "yes" and r["socle_dimension"] == 1
    assert rep["input_digest"].startswith("sha256:")
    assert rep["version"] == __version__
    code, rep = run_json("info", fixtures / "kA2.json")
    assert code == 0 and rep["results"]["frobenius"] == "no"


def test_text_output(fixtures):
    code, text = run("info", fixtures / "kx3.json")
    assert code == 0
    assert "radical_layers: [3, 2, 1]" in text


@pytest.mark.parametrize("name,expected", [
    ("lambda_q2_Q", "ExtendedDynkin(~A1)"),
    ("kx3", "Dynkin(A2)"),
    ("delta_k4", "Other"),
])
def test_type(fixtures, name, expected):
    code, rep = run_json("type", fixtures / f"{name}.json")
    assert code == 0 and rep["results"]["type"] == expected


def test_type_certificate(fixtures):
    _, rep = run_json("type", fixtures / "lambda_q2_Q.json")
    comp = rep["results"]["components"][0]
    assert comp["definiteness"] == "semidefinite" and comp["kernel"] == [["1", "1"]]


def test_nakayama(fixtures):
    _, rep = run_json("nakayama", fixtures / "lambda_q2_Q.json")
    r = rep["results"]
    assert r["outer_order"] == "infinite"
    assert "x -> -2*x" in r["nakayama"] and "y -> -1/2*y" in r["nakayama"]
    _, rep = run_json("nakayama", fixtures / "lambda_q1_Q.json")
    assert rep["results"]["automorphism_order"] == 2
    _, rep = run_json("nakayama", fixtures / "kx3.json")
    assert rep["results"]["automorphism_order"] == 1
    assert rep["results"]["inner"] == "witness"
    code, _ = run("nakayama", fixtures / "kA2.json")
    assert code == 3


@pytest.mark.parametrize("kind,name,dim", [
    ("trivext", "kronecker", 8),
    ("veronese2", "kx3", 6),
    ("smash2", "lambda_q2_Q", 8),
    ("beilinson", "lambda_q2_Q", 4),
    ("skew", "lambda_q1_Q", 8),
    ("twisted-trivext", "lambda_q2_Q", 8),
    ("double", "kx3", 12),
])
def test_construct_round_trip(fixtures, tmp_path, kind, name, dim):
    target = tmp_path / "out.json"
    code, _ = run("construct", kind, fixtures / f"{name}.json", "-o", target)
    assert code == 0
    A, _ = read_algebra(str(target))
    assert A.dim == dim
    assert check_algebra(A) == []


def test_construct_basic_of_double(fixtures, tmp_path):
    d = tmp_path / "double.json"
    assert run("construct", "double", fixtures / "kx3.json", "-o", d)[0] == 0
    code, text = run("construct", "basic", d)
    assert code == 0
    assert len(json.loads(text)["basis_labels"]) == 3


def test_construct_with_arrow_level_sigma(fixtures):
    swap = json.dumps({"arrows": {"a": {"coeff": "1", "arrow": "b"}, "b": {"coeff": "1", "arrow": "a"}}})
    code, text = run("construct", "twisted-trivext", fixtures / "kronecker.json", "--sigma", swap)
    assert code == 0 and len(json.loads(text)["basis_labels"]) == 8
    bad = json.dumps({"arrows": {"a": {"coeff": "0", "arrow": "b"}}})
    code, _ = run("construct", "twisted-trivext", fixtures / "kronecker.json", "--sigma", bad)
    assert code == 3


def test_construct_skew_needs_finite_order(fixtures):
    code, _ = run("construct", "skew", fixtures / "lambda_q2_Q.json")
    assert code == 3


@pytest.mark.parametrize("name,answer", [
    ("lambda_q2_Q", "No"), ("lambda_q2_F5", "Yes"), ("kx3", "Yes"),
    ("lambda_q1_Q", "Yes"), ("lambda_qm1_Q", "Yes"), ("delta_kronecker", "Yes"),
    ("lambda_zeta3", "Yes"), ("delta_k4", "No"),
])
def test_fg(fixtures, name, answer):
    code, rep = run_json("fg", fixtures / f"{name}.json")
    assert code == 0
    assert rep["results"]["answer"] == answer
    assert rep["reasons"]


def test_fg_batch(fixtures, tmp_path):
    for name in ("kx3", "lambda_q2_Q", "malformed"):
        (tmp_path / f"{name}.json").write_bytes((fixtures / f"{name}.json").read_bytes())
    code, text = run("fg", "--batch", tmp_path)
    assert code == 2
    assert "malformed.json: error: SchemaError" in text
    assert text.count("answer: ") == 2
    assert f"file: {tmp_path / 'kx3.json'}" in text


@pytest.mark.parametrize("name,code", [("malformed", 2), ("zero_denominator", 2), ("kills_arrow", 3)])
def test_error_exit_codes(fixtures, name, code):
    got, rep = run_json("info", fixtures / f"{name}.json")
    assert got == code and rep["exit_code"] == code


def test_missing_file_and_bad_arguments(tmp_path):
    assert run("info", tmp_path / "nope.json")[0] == 2
    assert run("frobnicate")[0] == 2


def test_seed_from_environment(fixtures, monkeypatch):
    monkeypatch.setenv("QALG_SEED", "17")
    _, rep = run_json("fg", fixtures / "kx3.json")
    assert rep["seed"] == 17
    _, rep = run_json("fg", fixtures / "kx3.json", "--seed", "3")
    assert rep["seed"] == 3


def test_fg_reports_are_byte_identical(fixtures):
    outputs = {run("fg", fixtures / "lambda_q2_F5.json", "--json", "--seed", "5")[1] for _ in range(3)}
    assert len(outputs) == 1


def test_selftest_passes():
    code, text = run("selftest")
    assert code == 0
    assert "FAIL" not in text and text.count("PASS") >= 20


def test_selftest_names_corrupted_table(fixtures):
    code, text = run("selftest", fixtures / "corrupted_table.json")
    assert code == 4
    assert "FAIL  check_algebra(corrupted_table.json)" in text
    assert "associativity fails on (e1, e1, a)" in text


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "qalg.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and __version__ in res.stdout
