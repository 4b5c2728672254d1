import json
import subprocess
import sys

import pytest

from orecent.algebra import quaternions
from orecent.cli import main


def ore(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def ore_json(capsys, *argv):
    code, out, _ = ore(capsys, *argv, "--json")
    return code, json.loads(out)


def test_mul(capsys):
    assert ore(capsys, "mul", "x", "y") == (0, "y*x + 1\n", "")
    code, rep = ore_json(capsys, "mul", "--ctx", "diff-oct", "e1", "e1")
    assert code == 0
    assert rep["result"]["product"] == "-1"
    assert rep["inputs"] == ["e1", "e1"]
    assert "timing_ms" in rep


def test_commutes(capsys):
    assert ore(capsys, "commutes", "--ctx", "diff-oct", "x", "y")[1] == "false\n"
    assert ore(capsys, "commutes", "x^2", "x^3")[1] == "true\n"


def test_chi(capsys):
    assert ore(capsys, "chi", "0")[1] == "-inf\n"
    assert ore(capsys, "chi", "y*x^2 + x")[1] == "2\n"


def test_nucleus_check(capsys):
    assert ore(capsys, "nucleus-check", "--ctx", "diff-oct", "y")[1] == "true\n"
    code, rep = ore_json(capsys, "nucleus-check", "--ctx", "diff-oct", "e1*x")
    assert code == 0
    assert rep["result"]["in_nucleus"] is False
    assert rep["result"]["witness"]["associator"] != "0"


def test_centralizer(capsys):
    code, rep = ore_json(capsys, "centralizer", "--ctx", "diff-oct", "x^2", "--degree", "1")
    assert code == 0
    assert rep["result"]["dimension"] == 16


def test_module_basis(capsys):
    code, rep = ore_json(capsys, "module-basis", "--ctx", "diff-oct", "x^2", "--max-deg", "5")
    assert code == 0
    assert rep["result"]["rank"] == 16 == rep["result"]["rank_bound"]
    code, rep = ore_json(capsys, "module-basis", "x^2", "--max-deg", "4")
    assert rep["result"]["elements"] == ["1", "x"]
    assert rep["result"]["rank_divides_m"] is True


def test_dcond(capsys):
    assert ore(capsys, "dcond", "x", "2*x", "--ell", "1")[1] == "dependent 2 -1\n"
    code, out, _ = ore(capsys, "dcond", "--ctx", "diff-oct", "--of", "x^2", "--degree", "1",
                       "--ell", "8")
    assert code == 0 and out.startswith("dependent")


def test_bc_poly(capsys):
    code, rep = ore_json(capsys, "bc-poly", "--ctx", "diff-rat", "x^2", "x^3")
    assert code == 0
    assert rep["result"]["polynomial"] == "s^3 - t^2"
    assert ore(capsys, "bc-poly", "x^2", "x", "--box", "1", "2")[1] == "none\n"
    assert ore(capsys, "bc-poly", "x^2", "x", "--box", "2", "1")[1] == "t^2 - s\n"


def test_verify_context(capsys):
    assert ore(capsys, "verify-context", "--ctx", "subst-oct", "--samples", "5")[1] == "true\n"


def test_user_errors_exit_2(capsys):
    code, out, err = ore(capsys, "mul", "x +", "y")
    assert code == 2 and out == ""
    assert "line 1, column 4" in err
    assert ore(capsys, "bc-poly", "x", "y")[0] == 2
    assert ore(capsys, "module-basis", "--ctx", "diff-oct", "e1*x")[0] == 2
    assert ore(capsys, "mul", "--ctx", "diff", "x", "y")[0] == 2
    assert ore(capsys, "mul", "--ctx", "subst-oct", "--s", "e1*y^2", "x", "y")[0] == 2
    code, rep = ore_json(capsys, "chi", "e1")
    assert code == 2 and "error" in rep


def test_custom_algebra_file(capsys, tmp_path):
    path = tmp_path / "quat.json"
    path.write_text(json.dumps(quaternions().to_json()))
    code, out, _ = ore(capsys, "mul", "--ctx", "diff", "--algebra", str(path), "e1*x", "e2")
    assert code == 0 and out == "e3*x\n"
    code, out, _ = ore(capsys, "commutes", "--ctx", "subst", "--algebra", "quaternions",
                       "--s", "y^3", "--delta-y", "0", "x", "y^3")
    assert out == "false\n"


def test_no_timing_is_deterministic(capsys):
    argv = ["dcond", "--ctx", "diff-oct", "--of", "x^2", "--ell", "8", "--json", "--no-timing"]
    first = ore(capsys, *argv)[1]
    second = ore(capsys, *argv)[1]
    assert first == second
    assert "timing_ms" not in json.loads(first)


def test_seed_env_var(capsys, monkeypatch):
    argv = ["dcond", "--ctx", "diff-oct", "--of", "x^2", "--ell", "8", "--json", "--no-timing"]
    monkeypatch.setenv("ORE_SEED", "5")
    env5 = json.loads(ore(capsys, *argv)[1])
    flag5 = json.loads(ore(capsys, *argv, "--seed", "5")[1])
    monkeypatch.setenv("ORE_SEED", "6")
    env6 = json.loads(ore(capsys, *argv)[1])
    assert env5 == flag5
    assert env5["result"]["elements"] != env6["result"]["elements"]


@pytest.mark.parametrize("argv", [
    ["bc-poly", "x^2", "x^3"],
    ["mul", "--ctx", "subst-oct", "e1*x^2", "e2*y"],
])
def test_subprocess_outputs_identical(argv):
    runs = [subprocess.run([sys.executable, "-m", "orecent", *argv], capture_output=True)
            for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
