import json
import os
import subprocess
import sys

import pytest

from supercoh import liesuper as ls
from supercoh import smodule as sm
from supercoh.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_build_and_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "algebra", "build", "--family", "sbar", "--n", "3")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "1" and len(data["basis"]) == 18
    path = tmp_path / "g.json"
    path.write_text(out)
    code, out, _ = run(capsys, "algebra", "validate", "--file", str(path))
    assert code == 0 and json.loads(out)["ok"]


def test_validate_failure_exit_code(capsys, tmp_path):
    g = ls.construct_W(3)
    i, j = g.index("d1"), g.index("x12d2")
    k = next(iter(g.bracket({i: 1}, {j: 1})))
    path = tmp_path / "bad.json"
    path.write_text(g.perturbed(i, j, k, 1).dumps())
    code, out, _ = run(capsys, "algebra", "validate", "--file", str(path))
    assert code == 1
    assert json.loads(out)["violations"]


def test_cohomology_command(capsys):
    code, out, _ = run(capsys, "cohomology", "--family", "sbar", "--n", "3", "--sub", "g0",
                       "--coeff", "trivial", "--pmax", "6", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "1"
    assert data["dims"] == [1, 0, 0, 0, 1, 0, 0]


def test_coefficient_expressions(capsys, tmp_path):
    code, out, _ = run(capsys, "cohomology", "--family", "glmn", "--m", "1", "--n", "1", "--sub", "g0",
                       "--coeff", "tensor(adjoint,dual(adjoint))", "--pmax", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "p,dim"
    g = ls.construct_gl_super(1, 1)
    path = tmp_path / "ad.json"
    path.write_text(sm.adjoint(g).dumps())
    code, out2, _ = run(capsys, "cohomology", "--family", "glmn", "--m", "1", "--n", "1", "--sub", "g0",
                        "--coeff", f"file:{path}", "--pmax", "3")
    code, out3, _ = run(capsys, "cohomology", "--family", "glmn", "--m", "1", "--n", "1", "--sub", "g0",
                        "--coeff", "adjoint", "--pmax", "3")
    assert json.loads(out2)["dims"] == json.loads(out3)["dims"]


def test_ext_command(capsys):
    code, out, _ = run(capsys, "ext", "--family", "sbar", "--n", "3", "--sub", "g0", "--coeff", "kac:0",
                       "--pmax", "4", "--format", "md")
    assert code == 0
    assert "| dim H^p | 1 | 0 | 0 | 0 | 0 |" in out


def test_typicality_and_support(capsys):
    code, out, _ = run(capsys, "typicality", "--family", "sbar", "--n", "3", "--weight", "2,1,0")
    assert code == 0 and json.loads(out)["verdict"] == "typical"
    code, out, _ = run(capsys, "typicality", "--weight", "2,0,3")
    data = json.loads(out)
    assert data["verdict"] == "atypical" and data["sigma_shift"] == {"a": "2", "bar": ["0", "-2", "1"]}
    code, out, _ = run(capsys, "support", "simple", "--family", "sbar", "--n", "5", "--weight", "1,1,1,1,0")
    assert code == 0 and json.loads(out) == {"schema": "1", "kind": "FullAffine", "ambient_dim": 3, "dim": 3}
    code, out, _ = run(capsys, "support", "kac", "--family", "sbar", "--n", "3", "--weight", "0,0,0")
    assert json.loads(out)["kind"] == "ZeroPoint"


def test_rankvariety_command(capsys):
    code, out, _ = run(capsys, "rankvariety", "--n", "3", "--module", "free", "--points", "10")
    assert code == 0 and json.loads(out)["consistent_with"] == ["ZeroPoint"]
    code, out, _ = run(capsys, "rankvariety", "--n", "3", "--module", "trivial", "--points", "10")
    assert json.loads(out)["consistent_with"] == ["FullAffine"]


def test_invariants_and_crosscheck(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "3", "--pmax", "4")
    data = json.loads(out)
    assert code == 0 and data["generator_degrees"] == [2] and data["bruteforce"] == [1, 0, 0, 0, 1]
    code, out, _ = run(capsys, "crosscheck", "--n", "3", "--pmax", "4")
    # cochain and polynomial routes agree with each other but not with the printed ring
    assert code == 1
    data = json.loads(out)
    assert data["cohomology"] == data["bruteforce"] and not data["agree"]


@pytest.mark.parametrize("argv", [
    ["cohomology", "--family", "sbar", "--n", "3", "--pmax", "-1"],
    ["cohomology", "--family", "sbar", "--n", "2", "--sub", "e", "--pmax", "2"],
    ["cohomology", "--family", "w", "--n", "3", "--sub", "e", "--pmax", "2"],
    ["cohomology", "--family", "glmn", "--n", "1", "--pmax", "2"],
    ["cohomology", "--family", "sbar", "--n", "3", "--coeff", "bogus", "--pmax", "2"],
    ["support", "simple", "--family", "sbar", "--n", "3", "--weight", "0,1,2"],
    ["nosuchcommand"],
])
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_determinism_across_processes(tmp_path):
    cmds = [["cohomology", "--family", "sbar", "--n", "3", "--pmax", "4"],
            ["rankvariety", "--n", "3", "--seed", "5", "--points", "10", "--format", "csv"],
            ["typicality", "--weight", "3,3,1", "--format", "md"]]
    for argv in cmds:
        outs = {subprocess.run([sys.executable, "-m", "supercoh", *argv], capture_output=True, check=False,
                               env={**os.environ, "PYTHONHASHSEED": str(s)}).stdout for s in (0, 1)}
        assert len(outs) == 1
