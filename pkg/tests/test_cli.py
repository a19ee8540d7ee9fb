import json
import subprocess
import sys
from pathlib import Path

import pytest

from cfkcalc.cli import pretty_terms, run
from cfkcalc.complexes import from_json, is_isomorphic, to_json
from cfkcalc.staircases import cn_dual_model, cn_model, staircase, torus_alexander

GOLDEN = Path(__file__).parent / "golden"


def call(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_table_matches_golden(capsys):
    code, out, _ = call(["surgery-dual", "--torus", "3", "5", "--table"], capsys)
    assert code == 0
    assert out == (GOLDEN / "t35_dual_table.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_model_golden_files(n):
    golden = from_json((GOLDEN / f"c{n}.json").read_text())
    assert is_isomorphic(golden, cn_model(n), by_name=True)
    assert to_json(cn_model(n)) == (GOLDEN / f"c{n}.json").read_text()


def test_staircase_json_round_trip(capsys, tmp_path):
    target = tmp_path / "t35.json"
    assert call(["staircase", "--torus", "3", "5", "-o", str(target)], capsys)[0] == 0
    assert is_isomorphic(from_json(target.read_text()), staircase(torus_alexander(3, 5)), by_name=True)


def test_staircase_table(capsys):
    code, out, _ = call(["staircase", "--exps", "1", "3", "4", "--table"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "x1_3  (-2,2)  M=-4"


def test_invariants_command(capsys):
    code, out, _ = call(["invariants", "--torus", "2", "7", "--dual", "--compute", "tau,epsilon"], capsys)
    assert (code, out.strip()) == (0, "tau=-1 epsilon=0")
    code, out, _ = call(["invariants", "--torus", "3", "5"], capsys)
    assert out.strip() == "tau=4 nu=4 nuprime=3 epsilon=1"


def test_invariants_from_file(capsys, tmp_path):
    path = tmp_path / "c2.json"
    path.write_text(to_json(cn_dual_model(2)))
    code, out, _ = call(["invariants", "--input", str(path), "--compute", "tau"], capsys)
    assert (code, out.strip()) == (0, "tau=-1")


def test_tensor_and_conn(capsys, tmp_path):
    a, b, t = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "t.json"
    a.write_text(to_json(cn_model(2)))
    b.write_text(to_json(cn_dual_model(2)))
    assert call(["tensor", "--input", str(a), "--input", str(b), "--reduce", "-o", str(t)], capsys)[0] == 0
    for extra in ([], ["--oracle"]):
        code, out, _ = call(["conn", "--input", str(t)] + extra, capsys)
        assert code == 0
        assert len(json.loads(out)["generators"]) == 1


def test_dual_command(capsys, tmp_path):
    a = tmp_path / "a.json"
    a.write_text(to_json(cn_model(3)))
    code, out, _ = call(["dual", "--input", str(a)], capsys)
    assert code == 0
    assert is_isomorphic(from_json(out), cn_dual_model(3))


def test_saw_edge_and_lemma(capsys):
    code, out, _ = call(["saw-edge", "--k", "2", "--n", "3"], capsys)
    assert code == 0 and len(json.loads(out)["generators"]) == 5
    code, out, _ = call(["verify-lemma", "--k", "1", "--n", "2", "--l", "3"], capsys)
    assert code == 0 and "fail" not in out


def test_independence_command(capsys):
    code, out, _ = call(["independence", "--ns", "3", "--ms", "2"], capsys)
    assert (code, out.strip()) == (0, "generators=9 conn=9 vertical_dim=9 certified=true obstructs=true")


@pytest.mark.parametrize("argv", [
    ["saw-edge", "--k", "0", "--n", "2"],
    ["staircase"],
    ["staircase", "--torus", "2", "4"],
    ["staircase", "--exps", "3", "2"],
    ["invariants", "--torus", "2", "3", "--compute", "sigma"],
    ["surgery-dual", "--torus", "3", "5", "--exps", "1"],
    ["no-such-command"],
    ["verify"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert call(argv, capsys)[0] == 2


def test_computation_errors_exit_1(capsys):
    code, _, err = call(["independence", "--ns", "3", "3", "3", "--ms", "2", "2"], capsys)
    assert code == 1 and "bound" in err
    code, _, _ = call(["verify-lemma", "--k", "1", "--n", "3", "--l", "2"], capsys)
    assert code == 1


def test_bad_json_is_rejected(capsys, tmp_path):
    path = tmp_path / "bad.json"
    data = json.loads(to_json(cn_model(2)))
    data["differential"][0]["terms"] = [{"u": 0, "v": 0}]
    path.write_text(json.dumps(data))
    assert call(["dual", "--input", str(path)], capsys)[0] == 1
    assert call(["dual", "--input", str(tmp_path / "missing.json")], capsys)[0] == 2
    path.write_text("not json")
    assert call(["dual", "--input", str(path)], capsys)[0] == 1


def test_pretty_terms():
    assert pretty_terms("U^4 g_3 + U beta_1") == "U⁴ g₃ + U β₁"
    assert pretty_terms("alpha_-4") == "α₋₄"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cfkcalc", "invariants", "--torus", "2", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "tau=1 nu=1 nuprime=0 epsilon=1"
