import json
import subprocess
import sys
from pathlib import Path

import pytest
from jsonschema import validate

from ioacheck.cli import main
from ioacheck.model import abelian_model, save_model


SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report.schema.json").read_text())


def run(tmp_path, *args):
    report = tmp_path / "report.json"
    code = main([*args, "--report", str(report)])
    rep = json.loads(report.read_text()) if report.exists() else None
    if rep is not None:
        validate(rep, SCHEMA)
    return code, rep


def test_default_suites_without_model(tmp_path):
    code, rep = run(tmp_path)
    assert code == 0
    assert rep["config"]["suites"] == ["formal", "paths"]
    assert {c["suite"] for c in rep["checks"]} == {"formal", "paths"}
    assert rep["summary"]["failed"] == 0


def test_full_run_on_abelian(tmp_path):
    code, rep = run(tmp_path, "--model", "abelian:2", "--cutoff", "8", "--seed", "5")
    assert code == 0
    assert rep["config"]["seed"] == 5
    assert list(dict.fromkeys(c["suite"] for c in rep["checks"])) == ["formal", "paths", "branches", "moore-seiberg", "jacobi", "s3"]


def test_exact_report_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["--model", "abelian:2", "--suites", "moore-seiberg,branches", "--report", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert all(c["duration"] is None for c in json.loads(a.read_text())["checks"])


def test_float_mode_records_durations(tmp_path):
    code, rep = run(tmp_path, "--model", "abelian:2", "--suites", "branches", "--mode", "float", "--tolerance", "1e-9")
    assert code == 0
    assert rep["config"]["tolerance"] == "1e-9"
    assert all(isinstance(c["duration"], float) for c in rep["checks"])


def test_mutated_model_exits_one(tmp_path):
    path = tmp_path / "m.json"
    save_model(abelian_model(4, product_factors={(1, 2, 3, 2): 2}), path)
    code, rep = run(tmp_path, "--model", str(path), "--suites", "moore-seiberg,s3")
    assert code == 1
    failing = [c for c in rep["checks"] if c["status"] == "fail"]
    assert any(c["name"] == "relation hexagon1" for c in failing)
    hex1 = next(c for c in failing if c["name"] == "relation hexagon1")
    assert ["1", "2", "3", "2"] in hex1["counterexample"]["quadruples"]
    assert any(c["suite"] == "s3" for c in failing)
    assert all("counterexample" in c for c in failing)


@pytest.mark.parametrize(
    "args",
    [
        ["--suites", "jacobi"],
        ["--model", "/nonexistent/model.json"],
        ["--suites", "nope"],
        ["--cutoff", "0"],
        ["--tolerance", "-1"],
        ["--path-params", "1,2,3,4,5,6,7,8"],
        ["--mode", "approximate"],
    ],
)
def test_usage_and_schema_errors_exit_two(args, capsys):
    assert main(args) == 2


def test_malformed_model_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colors": 4, "unknown": True}))
    assert main(["--model", str(bad)]) == 2


def test_internal_error_exits_three(monkeypatch):
    import ioacheck.cli as cli

    def boom(run):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "suite_formal", boom)
    assert main(["--suites", "formal"]) == 3


def test_dump_paths(tmp_path):
    assert main(["--suites", "paths", "--dump-paths", str(tmp_path / "paths")]) == 0
    assert sorted(p.name for p in (tmp_path / "paths").iterdir()) == ["gamma.csv", "sigma.csv"]


def test_custom_path_params(tmp_path):
    code, rep = run(tmp_path, "--suites", "paths", "--path-params", "9,5,9,3,3,9,5,9")
    assert code == 0
    assert rep["config"]["path_params"] == ["9", "5", "9", "3", "3", "9", "5", "9"]


def test_report_to_stdout(capsys):
    assert main(["--suites", "paths", "--report", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["tool"]["name"] == "ioacheck"


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "ioacheck", "--suites", "paths"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "total" in out.stdout
