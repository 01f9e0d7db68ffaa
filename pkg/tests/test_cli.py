from __future__ import annotations

import json
import math
from importlib import resources

import jsonschema
import pytest

from dconormal.cli import main, run

from golden_cases import CASES, GOLDEN, ROOT, run_case

SCHEMA = json.loads(resources.files("dconormal").joinpath("schema/report.schema.json").read_text())


def _close(a, b, path="$"):
    if isinstance(a, float) or isinstance(b, float):
        assert math.isclose(a, b, rel_tol=1e-6, abs_tol=1e-12), path
    elif isinstance(a, dict):
        assert a.keys() == b.keys(), path
        for k in a:
            _close(a[k], b[k], f"{path}.{k}")
    elif isinstance(a, list):
        assert len(a) == len(b), path
        for i, (x, y) in enumerate(zip(a, b)):
            _close(x, y, f"{path}[{i}]")
    else:
        assert a == b, path


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    proc = run_case(name)
    assert proc.returncode == CASES[name][2], proc.stderr
    report = json.loads(proc.stdout)
    jsonschema.validate(report, SCHEMA)
    _close(report, json.loads((GOLDEN / f"{name}.json").read_text()))


@pytest.mark.parametrize("name", ["conormal_cone_all", "whitney_w_umbrella", "polar_cone",
                                  "transversality_cone", "delta_5_3_2"])
def test_byte_identical_across_runs(name):
    a = run_case(name, hashseed="1")
    b = run_case(name, hashseed="2")
    assert a.stdout == b.stdout


def test_summary_on_stderr(capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    assert main(["conormal", "corpus/cone3.var", "--d", "2"]) == 0
    out = capsys.readouterr()
    assert json.loads(out.out)["status"] == "ok"
    assert out.err.startswith("dconormal conormal:")


def test_json_only_silences_stderr(capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    main(["delta", "--n", "3", "--d", "1", "--t", "1", "--trials", "10", "--json-only"])
    assert capsys.readouterr().err == ""


def test_no_timings_in_reports(monkeypatch):
    monkeypatch.chdir(ROOT)
    report, _, _ = run(["polar", "corpus/cone3.var", "--ell", "2", "--k", "1", "--draws", "1"])
    assert "time" not in json.dumps(report)


@pytest.mark.parametrize("argv,kind", [
    (["conormal", "corpus/missing.var", "--d", "2"], "InputError"),
    (["conormal", "corpus/cone3.var", "--d", "1"], "InputError"),
    (["conormal", "corpus/cone3.var", "--d", "2", "--chart", "7"], "InputError"),
    (["whitney-a", "corpus/cone3.var", "--y-axes", "1"], "NotContainedError"),
    (["whitney-a", "corpus/umbrella.var", "--y-axes", "x"], "InputError"),
    (["delta", "--n", "3", "--d", "3", "--t", "1"], "InputError"),
    (["polar", "corpus/cone3.var", "--ell", "2", "--k", "2"], "InputError"),
    (["check-integral", "corpus/origin_fiber.zvar", "--n", "3", "--d", "2"], "InputError"),
])
def test_input_errors(argv, kind, monkeypatch):
    monkeypatch.chdir(ROOT)
    report, code, _ = run(argv)
    assert code == 2 and report["status"] == "input-error"
    assert report["error"]["type"] == kind
    jsonschema.validate(report, SCHEMA)


def test_parse_error_position(tmp_path):
    bad = tmp_path / "bad.var"
    bad.write_text("vars: x y\nx +\n")
    report, code, _ = run(["nash", str(bad)])
    assert code == 2 and report["error"]["type"] == "ParseError"
    assert "line 2" in report["error"]["message"]


def test_inputs_record_hash(monkeypatch):
    import hashlib

    monkeypatch.chdir(ROOT)
    report, _, _ = run(["nash", "corpus/cone3.var"])
    assert report["inputs"]["sha256"] == hashlib.sha256((ROOT / "corpus/cone3.var").read_bytes()).hexdigest()
