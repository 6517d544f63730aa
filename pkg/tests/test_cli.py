import json

import pytest

from ellnb.cli import CSV_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_params_example_and_replay(capsys, tmp_path):
    code, out, _ = run(capsys, "params", "--q", "13", "--n", "7", "--overrides", "example1.json")
    assert code == 0
    data = json.loads(out)
    assert data["t"] == [0, 10] and data["R"] == [9, 0] and data["scalar_a"] == 6
    path = tmp_path / "p.json"
    path.write_text(out)
    code, again, _ = run(capsys, "params", "--overrides", str(path))
    assert code == 0 and json.loads(again) == data


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "params", "--q", "4", "--n", "100")[0] == 2
    code, _, err = run(capsys, "params", "--q", "12", "--n", "5")
    assert code == 1 and "q must be a prime power" in err
    assert run(capsys, "params", "--q", "13")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "params", "--overrides", str(tmp_path / "missing.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"q": 13, "n": 7, "curve": {"p": 13, "a": [4, 1, 9, 3, 8]}, "t": [0, 10], "R": [5, 1]}))
    code, _, err = run(capsys, "bounds", "--overrides", str(bad))
    assert code == 1 and "auxiliary point is n-torsion" in err


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--overrides", "example1")
    data = json.loads(out)
    assert (data["lower"], data["upper"], data["middle_sum"]) == (25, 43, 22)
    assert "exact" not in data
    data = json.loads(run(capsys, "bounds", "--overrides", "example3")[1])
    assert (data["lower"], data["upper"]) == (11, 26)


def test_exact_table(capsys):
    code, out, _ = run(capsys, "exact", "--overrides", "example2", "--format", "table")
    assert code == 0
    assert "bounds: 21 <= C <= 36" in out
    assert "upper = 36 differs from the reference value 31" in out


def test_multiply(capsys):
    code, out, _ = run(capsys, "multiply", "--overrides", "example1", "--x", "[1,0,0,0,0,0,0]", "--y", "[1,0,0,0,0,0,0]")
    data = json.loads(out)
    exact = json.loads(run(capsys, "exact", "--overrides", "example1")[1])
    assert code == 0 and data["product"] == exact["rows"]["0"] and data["verified"] is True
    code, out, _ = run(capsys, "multiply", "--overrides", "example3", "--seed", "5")
    assert code == 0 and json.loads(out)["verified"] is True
    assert run(capsys, "multiply", "--overrides", "example3", "--seed", "5")[1] == out
    assert run(capsys, "multiply", "--overrides", "example1", "--x", "[1,0]", "--y", "[1,0,0,0,0,0,0]")[0] == 1


def test_sweep_csv(capsys, tmp_path):
    out_path = tmp_path / "s.csv"
    assert main(["sweep", "--qs", "7", "--out", str(out_path)]) == 0
    first = out_path.read_text()
    lines = first.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert [row.split(",")[:2] for row in lines[1:]] == [["7", str(n)] for n in range(2, 7)]
    for row in lines[1:]:
        cells = row.split(",")
        lower, upper, exact = int(cells[11]), int(cells[12]), int(cells[13])
        assert lower <= exact <= upper
    assert main(["sweep", "--qs", "7", "--out", str(out_path)]) == 0
    assert out_path.read_text() == first


def test_sweep_empty(capsys):
    code, out, _ = run(capsys, "sweep", "--qs", "5", "--n-min", "20")
    assert code == 0 and out.strip() == ",".join(CSV_COLUMNS)
