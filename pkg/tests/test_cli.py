import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcplab.cli import main, mat_json, read_input, vec_json
from lcplab.ratmat import RatMatrix
from conftest import rationals

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], out=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text.strip() else None)


def sample(name):
    return SAMPLES / name


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_classify_unit3():
    code, rep = run("classify", sample("unit_minors.json"))
    assert code == 0 and rep["schema"] == "lcplab/1"
    assert rep["hidden_z"]["status"] == "certified"
    assert rep["algorithm"]["verdict"] == "P_CERTIFIED"
    assert rep["classes"]["P"]["member"] is True


def test_classify_identity():
    code, rep = run("classify", sample("identity3.json"))
    assert code == 0
    assert all(rep["classes"][k]["member"] for k in ("Z", "K", "P"))


def test_classify_nonp0_is_inconclusive():
    code, rep = run("classify", sample("hidden_not_p0.json"))
    assert code == 2
    assert rep["hidden_z"]["status"] == "certified"
    assert rep["classes"]["P0"]["member"] is False
    assert rep["algorithm"]["verdict"] == "INCONCLUSIVE"


def test_classify_class_subset_and_bad_params():
    code, rep = run("classify", sample("identity3.json"), "--classes", "Z,typeD")
    assert set(rep["classes"]) == {"Z", "typeD"}
    assert run("classify", sample("identity3.json"), "--classes", "Q")[0] == 3
    assert run("classify", sample("identity3.json"), "--delta", "0")[0] == 3


def test_rs_seed_extends_search(tmp_path):
    p = write(tmp_path, {"rows": [[1, 2, 0], [0, 1, 0], [-1, 0, 1]]})
    code, rep = run("hidden", "find", p)
    assert code == 2 and rep["certificate"] is None
    code, rep = run("hidden", "find", p, "--rs-seed", "1,5,1:0,0,0")
    assert code == 0 and rep["certificate"] is not None


def test_solve_cross_check_unit3():
    code, rep = run("solve", sample("unit_minors.json"), "--cross-check")
    assert code == 0 and rep["agreement"] is True
    for m in ("lemke", "crisscross", "lp"):
        assert rep["methods"][m]["z"] == [0, 1, 1]
    assert rep["methods"]["enumerate"]["count"] == 1


def test_solve_nonnegative_q(tmp_path):
    p = write(tmp_path, {"A": [[1, 2], [3, -4]], "q": [1, 1]})
    code, rep = run("solve", p)
    assert code == 0 and rep["methods"]["lemke"]["z"] == [0, 0]


@pytest.mark.parametrize("method", ["lp", "lemke", "crisscross", "enumerate"])
def test_solve_empty_feasible_set(method):
    code, rep = run("solve", sample("fea_empty.json"), "--method", method)
    assert code == 1 and rep["feasible_set_empty"] is True


def test_solve_lp_without_certificate(tmp_path):
    p = write(tmp_path, {"A": [[1, 1], [1, 1]], "q": [-1, -1]})
    assert run("solve", p, "--method", "lp")[0] == 3


def test_solve_requires_q():
    assert run("solve", sample("identity3.json"))[0] == 3


def test_hidden_verify_sing3():
    code, rep = run("hidden", "verify", sample("singular_hidden_z.json"))
    assert code == 0 and rep["valid"] is True
    assert rep["combination"] == ["16/5", "3/10", "63/10"]


def test_hidden_verify_invalid_and_missing(tmp_path):
    p = write(tmp_path, {"A": [[2, 0], [0, 2]],
                         "certificate": {"X": [[1, 0], [0, 1]], "Y": [[1, 0], [0, 1]],
                                         "r": [1, 1], "s": [0, 0]}})
    code, rep = run("hidden", "verify", p)
    assert code == 1 and rep["valid"] is False and rep["violations"]
    assert run("hidden", "verify", sample("identity3.json"))[0] == 3


def test_hidden_verify_dimension_mismatch(tmp_path):
    p = write(tmp_path, {"A": [[1, 0], [0, 1]],
                         "certificate": {"X": [[1]], "Y": [[1]], "r": [1], "s": [0]}})
    assert run("hidden", "verify", p)[0] == 3


def test_hidden_find_ones():
    code, rep = run("hidden", "find", sample("ones2.json"))
    assert code == 2 and rep["status"] == "unknown"


def test_hidden_perturb():
    code, rep = run("hidden", "perturb", sample("unit_minors.json"), "1/4")
    assert code == 0 and rep["l"] == "1/2" and rep["valid"] is True
    assert run("hidden", "perturb", sample("unit_minors.json"), "1/2")[0] == 3


def test_hidden_submatrix():
    code, rep = run("hidden", "submatrix", sample("unit_minors.json"), "1,2")
    assert code == 0
    code, rep = run("hidden", "submatrix", sample("unit_minors.json"), "0,9")
    assert code == 3


def test_suite_commands(tmp_path):
    out = tmp_path / "rep.json"
    code, rep = run("suite", "T3.1", "--trials", "10", "--output", out)
    assert code == 0 and rep["violations"] == []
    assert json.loads(out.read_text()) == rep
    assert run("suite", "bogus")[0] == 3


def test_malformed_file_reports_line_and_column(tmp_path, capsys):
    p = write(tmp_path, '{"rows": [[1, 2],\n  [3, ]]}')
    assert run("classify", p)[0] == 3
    assert f"{p}:2:" in capsys.readouterr().err
    p = write(tmp_path, '{"rows": [[1, 2],\n  [3, true]]}', "b.json")
    assert run("classify", p)[0] == 3
    assert f"{p}:2:7" in capsys.readouterr().err


@pytest.mark.parametrize("bad", [
    {"rows": [[1, 2], [3]]}, {"rows": [[1, 2]]}, {"rows": []}, {"cols": [[1]]},
    {"rows": [["x"]]}, {"rows": [["1/0"]]}, {"A": [[1]], "q": [1, 2]}, 7,
])
def test_bad_inputs_exit_3(tmp_path, bad):
    assert run("classify", write(tmp_path, bad))[0] == 3


def test_decimals_are_exact(tmp_path):
    p = write(tmp_path, '{"rows": [[1.6, 0.1], ["8/5", -2]]}')
    A, _, _ = read_input(p)
    assert A[0, 0] == A[1, 0] == Fraction(8, 5) and A[0, 1] == Fraction(1, 10)


@settings(max_examples=30)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(rationals(), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_matrix_round_trip(tmp_path_factory, rows):
    M = RatMatrix(rows)
    p = tmp_path_factory.mktemp("rt") / "m.json"
    p.write_text(json.dumps({"A": mat_json(M), "q": vec_json(M.row(0))}))
    A, q, _ = read_input(p)
    assert A == M and q == M.row(0)


def test_certificate_round_trip(tmp_path):
    code, rep = run("hidden", "find", sample("hidden_not_p0.json"))
    assert code == 0
    p = write(tmp_path, {"A": [[-1, 0], [-1, 2]], "certificate": rep["certificate"]})
    assert run("hidden", "verify", p)[0] == 0


ARGVS = st.lists(st.sampled_from([
    "classify", "solve", "hidden", "suite", "find", "verify", "perturb", "submatrix",
    "--method", "lp", "--cross-check", "--trials", "2", "--eps", "0", "1/4", "T3.1", "x",
    str(SAMPLES / "unit_minors.json"), str(SAMPLES / "ones2.json"), "/nonexistent.json",
]), max_size=5)


@settings(max_examples=80)
@given(ARGVS)
def test_exit_codes_are_total(argv):
    buf = io.StringIO()
    assert main(argv, out=buf) in (0, 1, 2, 3)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lcplab", "classify",
                          str(sample("identity3.json"))], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["command"] == "classify"
