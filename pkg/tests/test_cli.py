import io
import json
import subprocess
import sys

import pytest

from noa.cli import run
from noa.presentations import catalog, dumps


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_basis_orthofermion():
    code, out, _ = call("basis", "--catalog", "orthofermion", "--n", "2")
    assert code == 0
    assert "counts: [1, 4, 4, 0]" in out and "total: 9" in out
    assert "finite_dimensional: true" in out


def test_basis_structured():
    code, out, _ = call("basis", "--catalog", "orthofermion", "--n", "2", "--format", "structured")
    doc = json.loads(out)
    assert code == 0 and doc["counts"] == [1, 4, 4, 0] and doc["total"] == 9
    assert doc["finite_dimensional"] is True


def test_verify_susy_quasi_ortho():
    code, out, _ = call("verify", "susy", "--kind", "quasi_ortho", "--beta", "2")
    assert code == 0 and out.startswith("susy:quasi_ortho: PASS")


def test_reduce_fermion():
    code, out, _ = call("reduce", "--catalog", "fermion", "--n", "1", "--expr", "f- f+")
    assert code == 0 and out == "1 - f+ f-\n"


def test_catalog_list():
    code, out, _ = call("catalog", "list", "--format", "structured")
    kinds = [k["kind"] for k in json.loads(out)["kinds"]]
    assert code == 0 and "quasi_orthofermion" in kinds and len(kinds) == 8


@pytest.mark.parametrize("argv", [
    ("confluence", "--catalog", "orthofermion", "--n", "3"),
    ("complete", "--catalog", "quasi_orthofermion", "--beta", "-1"),
    ("verify", "noa", "--catalog", "boson", "--n", "2"),
    ("verify", "susy", "--kind", "n1_susy"),
    ("verify", "susy", "--kind", "ortho", "--n", "2"),
    ("verify", "susy", "--kind", "para_green", "--two-j", "2"),
    ("verify", "green", "--two-j", "3"),
    ("verify", "qnumber", "--q", "1/2", "--k", "3"),
    ("verify", "identity", "--catalog", "orthofermion", "--n", "2", "--expr", "a1- a2+"),
    ("verify", "nonderiv", "--catalog", "parafermion", "--two-j", "2"),
    ("verify", "nonderiv", "--catalog", "parafermion", "--two-j", "3"),
    ("fock", "--catalog", "orthofermion", "--n", "3"),
    ("fock", "--catalog", "boson", "--n", "1", "--cutoff", "5"),
    ("crosscheck", "--catalog", "orthofermion", "--n", "2", "--samples", "20"),
])
def test_exit_ok(argv):
    code, _, err = call(*argv)
    assert code == 0, err


@pytest.mark.parametrize("argv", [
    ("confluence", "--catalog", "quasi_orthofermion", "--beta", "2"),
    ("verify", "identity", "--catalog", "fermion", "--n", "1", "--expr", "f+ f-"),
    ("verify", "nonderiv", "--catalog", "parafermion", "--two-j", "1"),
])
def test_exit_fail(argv):
    code, out, _ = call(*argv)
    assert code == 1 and out


def test_exit_fail_reports_witness():
    code, out, _ = call("verify", "identity", "--catalog", "fermion", "--n", "1",
                        "--expr", "f+ f-", "--format", "structured")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "fail"
    assert doc["identities"][0]["residual"] == [{"c": "1", "w": ["f+", "f-"]}]


@pytest.mark.parametrize("argv", [
    ("reduce", "--catalog", "fermion", "--n", "1", "--expr", "c- f+"),
    ("reduce", "--catalog", "fermion", "--expr", "f- +"),
    ("reduce", "--expr", "f-"),
    ("reduce", "--catalog", "fermion", "--file", "x.json", "--expr", "f-"),
    ("reduce", "--catalog", "fermion", "--beta", "2", "--expr", "f-"),
    ("basis", "--catalog", "quasi_orthofermion", "--beta", "1"),
    ("basis", "--catalog", "boson", "--n", "1/2"),
    ("verify", "susy", "--kind", "quasi_ortho"),
    ("verify", "susy", "--kind", "para_green", "--two-j", "3/2"),
    ("verify", "qnumber", "--q", "1", "--k", "2"),
    ("verify", "noa", "--catalog", "parafermion", "--two-j", "2"),
    ("fock", "--catalog", "parafermion", "--two-j", "2"),
    ("fock", "--catalog", "boson", "--n", "1"),
    ("crosscheck", "--catalog", "boson", "--n", "1"),
    ("complete", "--catalog", "fermion", "--max-degree", "1"),
    ("basis", "--file", "/nonexistent/p.json"),
    ("frobnicate",),
    ("reduce", "--catalog", "fermion", "--n", "1.5", "--expr", "f-"),
])
def test_exit_usage(argv):
    code, _, _ = call(*argv)
    assert code == 2


@pytest.mark.parametrize("argv", [
    ("complete", "--catalog", "parafermion", "--two-j", "3", "--max-degree", "8"),
    ("reduce", "--catalog", "parafermion", "--two-j", "3", "--expr", "f- f+"),
    ("basis", "--catalog", "parafermion", "--two-j", "3"),
    ("verify", "identity", "--catalog", "parafermion", "--two-j", "3", "--expr", "f-"),
    ("verify", "nonderiv", "--catalog", "parafermion", "--two-j", "3", "--expr", "f- f- f- f-"),
])
def test_exit_cap(argv):
    code, _, _ = call(*argv)
    assert code == 3


def test_usage_errors_go_to_diagnostic_stream():
    code, out, err = call("reduce", "--catalog", "fermion", "--n", "1", "--expr", "c- f+")
    assert code == 2 and out == "" and "c-" in err


@pytest.mark.parametrize("argv", [
    ("verify", "susy", "--kind", "ortho", "--n", "2", "--format", "structured"),
    ("crosscheck", "--catalog", "fermion", "--n", "2", "--format", "structured"),
    ("confluence", "--catalog", "quasi_orthofermion", "--beta", "1/3", "--format", "structured"),
])
def test_structured_output_is_byte_identical(argv):
    first = call(*argv)
    assert first == call(*argv)
    json.loads(first[1])


def test_file_source(tmp_path):
    path = tmp_path / "qo.json"
    path.write_text(dumps(catalog("quasi_orthofermion", beta=2)), encoding="utf-8")
    code, out, _ = call("verify", "noa", "--file", str(path))
    assert code == 0 and "PASS" in out
    code, out, _ = call("reduce", "--file", str(path), "--expr", "a1- a2+ a2-")
    assert code == 0 and out == "1/2 a1- - a1- a1+ a1-\n"


def test_file_schema_error(tmp_path):
    doc = json.loads(dumps(catalog("fermion", n=1)))
    doc["relations"][0][0]["w"] = ["c-"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = call("basis", "--file", str(path))
    assert code == 2 and "unknown generator 'c-'" in err
    path.write_text("{oops", encoding="utf-8")
    code, _, err = call("basis", "--file", str(path))
    assert code == 2 and "line 1" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "noa", "reduce", "--catalog", "fermion", "--n", "1", "--expr", "f- f+"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "1 - f+ f-\n"
