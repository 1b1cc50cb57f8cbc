import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cmstoch.cli import main
from cmstoch.fixtures import ALL_FIXTURES, fixture_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def game_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(fixture_text(name))
        return str(path)
    return write


def test_matrix_solve(capsys):
    code, out, _ = run(capsys, "matrix", "solve", "--matrix", '[["1","2"],["2","1"]]')
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"command", "fingerprint", "results", "version"}
    assert report["results"]["value"] == "3/2"
    assert report["results"]["completely_mixed"] is True


def test_matrix_cm_check(capsys):
    code, out, _ = run(capsys, "matrix", "cm-check", "--matrix", "[[2,4],[3,3]]")
    res = json.loads(out)["results"]
    assert code == 0 and res["completely_mixed"] is False
    assert res["certificate"]["p2_vertex_count"] == 2


def test_solve_discounted_exact(capsys, game_file):
    code, out, _ = run(capsys, "solve-discounted", "--beta", "1/2", "--exact", game_file("example9"))
    res = json.loads(out)["results"]
    assert code == 0 and res["values"] == ["5/2", "2"] and res["exact"] is True
    code, out2, _ = run(capsys, "solve", "discounted", "--beta", "1/2", "--exact", game_file("example9"))
    assert json.loads(out2)["results"] == res


def test_solve_discounted_iterative(capsys, game_file):
    code, out, _ = run(capsys, "solve-discounted", "--beta", "3/4", "--tol", "1/1000", game_file("example14"))
    res = json.loads(out)["results"]
    assert code == 0 and res["exact"] is False
    assert all(abs(Fraction(v) - 4) <= Fraction(1, 1000) for v in res["values"])
    assert res["iterations"] <= res["iteration_bound"]


def test_verify_undiscounted(capsys, game_file, tmp_path):
    f = tmp_path / "f.json"
    g = tmp_path / "g.json"
    f.write_text('{"s1": ["1", "0"], "s2": ["1/2", "1/2"]}')
    g.write_text('[["1/2", "1/2"], ["1/2", "1/2"]]')
    code, out, _ = run(capsys, "verify-undiscounted", "--f", str(f), "--g", str(g), game_file("example9"))
    res = json.loads(out)["results"]
    assert code == 0 and res["optimal"] is True and res["value"] == ["1", "1"]


def test_analyze_cm(capsys, game_file):
    code, out, _ = run(capsys, "analyze-cm", game_file("example9"), "--undiscounted")
    res = json.loads(out)["results"]
    assert code == 0
    assert res["discounted"]["cm_for_all_tested"] is True
    assert res["undiscounted"]["completely_mixed"] is False
    assert res["undiscounted"]["witness"]["state"] == "s1"
    assert res["vanishing_discount"]["status"] == "certified"


def test_inconclusive_exit_code(capsys, game_file):
    code, out, err = run(capsys, "analyze-cm", game_file("example9"), "--undiscounted", "--schedule-n", "2")
    assert code == 4
    assert json.loads(err)["error"] == "Inconclusive"
    assert json.loads(out)["results"]["vanishing_discount"]["status"] == "inconclusive"


def test_verify_theorems(capsys, game_file):
    code, out, _ = run(capsys, "verify-theorems", game_file("example15"))
    res = json.loads(out)["results"]
    assert code == 0 and res["passed"] is True
    assert res["nonzero_value_transfer"]["converse_violations"] == ["s1"]


def test_reproduce_is_deterministic(capsys):
    first = run(capsys, "reproduce", "--all")
    second = run(capsys, "reproduce", "--all")
    assert first[0] == 0 and first[1] == second[1]
    assert json.loads(first[1])["results"]["summary"] == "4/4 fixtures pass"


def test_emit_fixtures(capsys, tmp_path):
    code, _, _ = run(capsys, "reproduce", "--example", "lemma2", "--emit-fixtures", str(tmp_path))
    assert code == 0
    assert sorted(p.stem for p in tmp_path.iterdir()) == sorted(ALL_FIXTURES)


def test_pretty_and_timing(capsys):
    code, out, _ = run(capsys, "--pretty", "matrix", "solve", "--matrix", "[[1,2],[2,1]]")
    assert code == 0 and "value" in out and not out.startswith("{")
    code, out, _ = run(capsys, "matrix", "solve", "--timing", "--matrix", "[[1,2],[2,1]]")
    assert "timing" in json.loads(out)
    code, out, _ = run(capsys, "matrix", "solve", "--matrix", "[[1,2],[2,1]]")
    assert "timing" not in json.loads(out)


@pytest.mark.parametrize("content", ["", "{not json", '{"states": 1}'])
def test_bad_input_exits_2(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, out, err = run(capsys, "solve-discounted", "--beta", "1/2", str(path))
    assert code == 2 and out == ""
    assert "message" in json.loads(err)


def test_missing_file_and_bad_beta(capsys, tmp_path):
    assert run(capsys, "solve-discounted", "--beta", "1/2", str(tmp_path / "nope.json"))[0] == 2
    assert run(capsys, "solve-discounted", "--beta", "1", "--exact", str(tmp_path / "nope.json"))[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["reproduce", "--example", "bogus"])
    assert info.value.code == 2


def test_size_guard_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("CMSTOCH_GUARD", "1")
    code, _, err = run(capsys, "matrix", "solve", "--matrix", "[[1,2,3],[3,1,2],[2,3,1]]")
    assert code == 3 and json.loads(err)["error"] == "SizeGuardError"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cmstoch", "matrix", "solve", "--matrix", "[[0]]"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["results"]["value"] == "0"
