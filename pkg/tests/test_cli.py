import json

import pytest

from spherical_hecke.cli import SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lk_json_row(capsys):
    code, out, _ = run(capsys, "lk", "--rs", "GL3", "--lambda", "2,1,0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == SCHEMA
    assert {"mu": [1, 1, 1], "P": [1, 1]} in data["rows"]
    assert data["config"]["lambda"] == [2, 1, 0]


def test_lk_text(capsys):
    code, out, _ = run(capsys, "lk", "--rs", "B2", "--lambda", "0,2")
    assert code == 0 and "[1, 0, 1]" in out


def test_lk_uses_cache(capsys, tmp_path):
    assert run(capsys, "lk", "--n", "3", "--lambda", "2,1,0", "--cache-dir", str(tmp_path))[0] == 0
    assert any(tmp_path.iterdir())


@pytest.mark.parametrize("argv", [
    ["lk", "--rs", "E8", "--lambda", "1"],
    ["lk", "--rs", "GL2", "--lambda", "0,1"],
    ["lk", "--rs", "GL2"],
    ["local-check", "--n", "2", "--p", "7", "--deg-max", "2"],
    ["local-check", "--rs", "B2", "--deg-max", "2"],
    ["lgamma", "--rs", "GL2", "--gamma", "1,1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_local_check_suite(capsys):
    code, out, _ = run(capsys, "local-check", "--n", "2", "--p", "2", "--deg-max", "2", "--json")
    assert code == 0 and json.loads(out)["pass"]


def test_local_check_single_pair(capsys):
    code, _, _ = run(capsys, "local-check", "--n", "2", "--p", "3", "--lambda", "1,0", "--nu", "1,0")
    assert code == 0


def test_cs_check_negative_weight(capsys):
    code, _, _ = run(capsys, "cs-check", "--n", "2", "--p", "2", "--mu", "1,0", "--nu=0,-1")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["kostant-check", "--rs", "A2"],
    ["id1-check", "--rs", "GL2", "--degree", "4"],
    ["plancherel-check", "--rs", "GL2", "--degree", "4", "--max-height", "2"],
    ["lgamma", "--rs", "GL2", "--gamma", "3/2,2/3", "--q", "4"],
    ["lgamma", "--rs", "A1", "--degree", "3"],
    ["stalks", "--rs", "GL3", "--lambda", "2,1,0"],
    ["satake", "--rs", "GL2", "--lambda", "2,0"],
    ["fplus-check", "--n", "2", "--nu", "1,1"],
    ["satake-oracle-check", "--n", "2", "--deg-max", "2"],
])
def test_commands_pass(capsys, argv):
    assert run(capsys, *argv)[0] == 0


def test_failure_exit_code(capsys):
    # the default tolerance cannot be met with three terms
    code, out, _ = run(capsys, "lgamma", "--rs", "GL2", "--gamma", "3/2,2/3", "--q", "4", "--terms", "3")
    assert code == 1 and "FAIL" in out
