import json
import subprocess
import sys

import pytest

from umbrella_hopf.cli import main
from umbrella_hopf.serialize import dumps, presentation_from_json, presentation_to_json
from umbrella_hopf.umbrella import build_umbrella, umbrella_hopf_data


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def um22_file(tmp_path, capsys):
    path = tmp_path / "um22.json"
    assert run(capsys, "gen", "--r", "2", "--s", "1", "--out", str(path))[0] == 0
    return path


def test_gen_reports_gkdim(capsys, tmp_path, um22_file):
    doc = json.loads(um22_file.read_text())
    assert len(doc["generators"]) == 8
    code, out, _ = run(capsys, "gen", "--r", "4", "--s", "2")
    assert code == 0 and "GKdim = 19" in out
    code, out, _ = run(capsys, "gen", "--r", "2", "--s", "1")
    assert "GKdim = 8" in out


def test_gen_zero_matrix(capsys, tmp_path):
    m = tmp_path / "A.json"
    m.write_text("[[0,0,0],[0,0,0],[0,0,0]]")
    code, out, _ = run(capsys, "gen", "--matrix", str(m), "--format", "json")
    assert code == 0
    assert json.loads(out)["generators"] == 3 + 3 + 9 + 1


def test_check_pass_and_stamp(capsys, tmp_path):
    path = tmp_path / "um32.json"
    run(capsys, "gen", "--r", "3", "--s", "1", "--out", str(path))
    code, out, _ = run(capsys, "check", "--in", str(path))
    assert code == 0 and "verdict: pass" in out
    assert "verified" in json.loads(path.read_text())


def test_check_mutant_fails(capsys, tmp_path):
    path = tmp_path / "mut.json"
    report = tmp_path / "rep.json"
    run(capsys, "gen", "--r", "2", "--s", "1", "--yy-coef", "1/2", "--out", str(path))
    code, _, _ = run(capsys, "check", "--in", str(path), "--out", str(report))
    assert code == 1
    rep = json.loads(report.read_text())
    assert rep["verdict"] == "fail"
    assert [f["relation"] for f in rep["failures"]] == ["y1,y2"]
    assert "verified" not in json.loads(path.read_text())


def test_check_wzz(capsys, tmp_path):
    path = tmp_path / "wzz.json"
    run(capsys, "gen", "--wzz", "0", "--out", str(path))
    assert run(capsys, "check", "--in", str(path))[0] == 0


def test_check_weight_condition_failure(capsys, tmp_path):
    doc = {"generators": [{"name": "a", "weight": 2}, {"name": "b", "weight": 1}],
           "relations": [], "hopf": {"delta": {}, "antipode": {}}}
    doc["hopf"]["delta"] = {n: [{"c": "1", "factors": [n, "1"]}, {"c": "1", "factors": ["1", n]}]
                            for n in ("a", "b")}
    doc["hopf"]["antipode"] = {"a": "-a", "b": "-b"}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, _ = run(capsys, "check", "--in", str(path))
    assert code == 1


def test_query_examples(capsys, um22_file):
    code, out, _ = run(capsys, "query", "nf", "--r", "2", "--s", "1", "--expr", "y2 y1")
    assert code == 0 and out.strip() == "y1 y2 - 1/3 x0 x0 x0"
    code, out, _ = run(capsys, "query", "primitives", "--r", "4", "--s", "2", "--cutoff", "2")
    assert code == 0 and out.strip() == "dim = 15"
    code, out, _ = run(capsys, "query", "hilbert", "--r", "2", "--s", "1", "--cutoff", "0")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "query", "order", "--r", "2", "--s", "1", "--expr", "x0 x0 x0")
    assert out.strip() == "order = 3"


def test_query_reports(capsys, tmp_path):
    assert run(capsys, "query", "nakayama", "--r", "5", "--s", "2")[0] == 0
    assert run(capsys, "query", "crossed", "--r", "2", "--s", "1", "--cutoff", "3")[0] == 0
    assert run(capsys, "query", "commfilt", "--r", "2", "--s", "1", "--cutoff", "4")[0] == 0
    code, out, _ = run(capsys, "query", "commfilt", "--r", "2", "--s", "1", "--k", "2", "--cutoff", "3")
    assert code == 1 and "u=x1" in out
    m = tmp_path / "A.json"
    m.write_text('[[0, 2, 1], [-2, 0, "1/2"], [-1, "-1/2", 0]]')
    code, out, _ = run(capsys, "query", "iso", "--matrix", str(m), "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_refusal_and_force(capsys, um22_file):
    code, _, err = run(capsys, "query", "nf", "--in", str(um22_file), "--expr", "y2 y1")
    assert code == 3 and "refused" in err
    code, out, _ = run(capsys, "query", "nf", "--in", str(um22_file), "--expr", "y2 y1", "--force")
    assert code == 0 and out.strip() == "y1 y2 - 1/3 x0 x0 x0"
    assert run(capsys, "check", "--in", str(um22_file))[0] == 0
    assert run(capsys, "query", "nf", "--in", str(um22_file), "--expr", "y2 y1")[0] == 0


def test_stale_stamp_refused(capsys, um22_file):
    run(capsys, "check", "--in", str(um22_file))
    doc = json.loads(um22_file.read_text())
    doc["relations"][0]["f"] = "x0"
    um22_file.write_text(json.dumps(doc))
    assert run(capsys, "query", "nf", "--in", str(um22_file), "--expr", "x1")[0] == 3


def test_mutant_query_refused(capsys):
    code, _, err = run(capsys, "query", "nf", "--r", "2", "--s", "1", "--yy-coef", "1/2", "--expr", "y1")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["gen", "--r", "3", "--s", "2"],
    ["gen", "--r", "-1", "--s", "0"],
    ["gen"],
    ["gen", "--r", "2"],
    ["check", "--in", "/nonexistent/file.json"],
    ["query", "nf", "--r", "2", "--s", "1", "--expr", "q7"],
    ["query", "nf", "--r", "2", "--s", "1"],
    ["query", "hilbert", "--r", "2", "--s", "1", "--cutoff", "-3"],
    ["query", "frobnicate"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_invalid_json_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check", "--in", str(bad))[0] == 2
    bad.write_text('{"generators": [{"name": "a"}]}')
    assert run(capsys, "check", "--in", str(bad))[0] == 2


def test_report_roundtrip_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(capsys, "check", "--r", "2", "--s", "1", "--seed", "9", "--no-timing",
                         "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert dumps(json.loads(text)) == text
    # timed reports still round-trip
    run(capsys, "check", "--r", "2", "--s", "1", "--out", str(a))
    text = a.read_text()
    assert dumps(json.loads(text)) == text


def test_presentation_roundtrip():
    p = build_umbrella(3, 1)
    doc = presentation_to_json(p, umbrella_hopf_data(p))
    q, data = presentation_from_json(json.loads(dumps(doc)))
    assert q.brackets == p.brackets and q.generators == p.generators
    assert presentation_to_json(q, data) == doc


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "umbrella_hopf", "gen", "--r", "2", "--s", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "GKdim = 8" in proc.stdout
