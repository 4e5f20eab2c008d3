import json
import subprocess
import sys

import pytest

from bidiagonal.cli import main

SL2_ARRAY = {"theta": ["-2", "0", "2"], "theta_star": ["2", "0", "-2"], "rho": [1, 2, 1]}
Q_ARRAY = {"field": "Qq", "theta": ["q^2", "1", "(1)/(q^2)"], "theta_star": ["(1)/(q^2)", "1", "q^2"], "rho": [1, 1, 1]}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(argv, capsys):
    status = main(argv)
    out = capsys.readouterr().out
    return status, json.loads(out)


def test_classify_positive_and_negative(tmp_path, capsys):
    status, out = run(["classify", write(tmp_path, "a.json", SL2_ARRAY)], capsys)
    assert status == 0 and out["passed"]
    bad = dict(SL2_ARRAY, rho=[2, 1, 2])
    status, out = run(["classify", write(tmp_path, "b.json", bad)], capsys)
    assert status == 1 and out["clauses"]["thm-class.v"] is False


def test_construct_then_verify(tmp_path, capsys):
    status, pair = run(["construct", write(tmp_path, "a.json", SL2_ARRAY)], capsys)
    assert status == 0
    path = write(tmp_path, "pair.json", pair)
    status, report = run(["verify", path], capsys)
    assert status == 0 and report["is_bidiagonal"]
    status, params = run(["params", path], capsys)
    assert params == SL2_ARRAY


def test_q_pipeline(tmp_path, capsys):
    status, pair = run(["construct", write(tmp_path, "a.json", Q_ARRAY)], capsys)
    assert status == 0 and pair["A"]["field"] == "Qq"
    path = write(tmp_path, "pair.json", pair)
    status, rel = run(["relation", path], capsys)
    assert status == 0 and rel["b"] == "(1)/(q^2)"
    status, out = run(["reduce", path], capsys)
    assert status == 0 and out["witness"] == {"p": "1", "q_scale": "0", "r": "1", "s": "0"}
    status, out = run(["iso", path, path], capsys)
    assert status == 0 and out["isomorphic"]


def test_not_a_pair_exits_one(tmp_path, capsys):
    nil = {"A": {"entries": [[0, 1], [0, 0]]}, "Astar": {"entries": [[0, 1], [0, 0]]}}
    status, out = run(["verify", write(tmp_path, "n.json", nil)], capsys)
    assert status == 1 and not out["is_bidiagonal"]
    assert any(f["clause"] == "def.i" for f in out["failures"])


def test_construct_negative_array(tmp_path, capsys):
    status, out = run(["construct", write(tmp_path, "a.json", dict(SL2_ARRAY, rho=[1, 1, 2]))], capsys)
    assert status == 1 and "thm-class.iv" in out["error"]


def test_parse_error_reports_path(tmp_path, capsys):
    bad = {"A": {"entries": [[1, 2], [3]]}, "Astar": {"entries": [[1, 0], [0, 1]]}}
    status, out = run(["verify", write(tmp_path, "bad.json", bad)], capsys)
    assert status == 2 and out["path"] == "$.A.entries[1]"


def test_invalid_json_and_missing_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run(["verify", str(path)], capsys)[0] == 2
    assert run(["verify", str(tmp_path / "absent.json")], capsys)[0] == 2


def test_usage_error():
    assert main(["frobnicate"]) == 2


def test_irrational_eigenvalues_exit_three(tmp_path, capsys):
    pair = {"A": {"entries": [[0, 2], [1, 0]]}, "Astar": {"entries": [[1, 0], [0, 1]]}}
    status, out = run(["verify", write(tmp_path, "irr.json", pair)], capsys)
    assert status == 3 and "hint" in out


def test_no_square_root_exit_three(tmp_path, capsys):
    arr = {"theta": ["1", "3", "7"], "theta_star": ["13", "5", "1"], "rho": [1, 1, 1]}
    status, out = run(["construct", write(tmp_path, "a.json", arr)], capsys)
    assert status == 3 and "Qq" in out["hint"]


def test_module_command(tmp_path, capsys):
    spec = {"variant": "sl2", "summands": [{"d": 2}, {"d": 1}]}
    status, out = run(["module", write(tmp_path, "s.json", spec)], capsys)
    assert status == 0 and out["dimension"] == 5
    assert out["segregation"]["segregated"] is False


def test_several_inputs_and_jobs(tmp_path, capsys):
    good = write(tmp_path, "a.json", SL2_ARRAY)
    bad = write(tmp_path, "b.json", dict(SL2_ARRAY, rho=[0, 1, 0]))
    status, out = run(["classify", good, bad], capsys)
    assert status == 1 and [o["passed"] for o in out] == [True, False]
    assert run(["classify", good, bad, "--jobs", "2"], capsys) == (status, out)


def test_output_file_and_determinism(tmp_path, capsys):
    src = write(tmp_path, "a.json", Q_ARRAY)
    outs = []
    for k in range(2):
        target = tmp_path / f"out{k}.json"
        assert main(["construct", src, "-o", str(target)]) == 0
        outs.append(target.read_text())
    assert outs[0] == outs[1]
    assert capsys.readouterr().out == ""


@pytest.mark.slow
def test_module_entry_point(tmp_path):
    src = write(tmp_path, "a.json", SL2_ARRAY)
    proc = subprocess.run([sys.executable, "-m", "bidiagonal", "classify", src], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"]
