import json
import shutil
import subprocess
import sys

import pytest

from posetcode.cli import main
from posetcode.serialize import load_code
from posetcode.worked import golden_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_worked_example_pretty(capsys):
    code, out, _ = run(capsys, "worked-example")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["polynomial", "hyperderivative", "codeword", "weight"]
    assert "25 codewords, parameters [4,2,3]" in out
    assert "weight enumerator 1 + 4x^3 + 20x^4" in out


def test_worked_example_json(capsys):
    code, out, _ = run(capsys, "worked-example", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 25
    assert doc["weight_enumerator"] == {"0": 1, "3": 4, "4": 20}
    assert doc["rows"][1] == {"polynomial": "4x^3 + 3x^2 + x", "hyperderivative": "2x^2 + x + 1",
                              "codeword": "3 3 3;4 2 2", "weight": 4}


def test_worked_example_tampered_golden(tmp_path, capsys):
    text = golden_path().read_text().replace("0 0 0;2 1 1,3", "0 0 0;2 1 1,4")
    bad = tmp_path / "golden.csv"
    bad.write_text(text)
    code, _, err = run(capsys, "worked-example", "--golden", str(bad))
    assert code == 3 and "golden row 9" in err


def test_code_build_weights_check(tmp_path, capsys):
    path = tmp_path / "code.json"
    assert run(capsys, "code", "build", "--q", "5", "--points", "1,3,4", "--s", "2", "--t", "4",
               "--b-row", "1", "--out", str(path))[0] == 0
    assert load_code(path).dim == 2
    code, out, _ = run(capsys, "code", "weights", str(path))
    assert code == 0 and out == "weight,count\n0,1\n3,4\n4,20\n"
    code, out, _ = run(capsys, "code", "weights", str(path), "--format", "json")
    assert json.loads(out)["counts"] == {"0": 1, "3": 4, "4": 20}
    code, out, _ = run(capsys, "code", "check-mds", str(path), "--expect-mds")
    assert code == 0 and "MDS" in out
    table = tmp_path / "w.csv"
    assert run(capsys, "code", "weights", str(path), "--out", str(table))[0] == 0
    assert table.read_text().startswith("weight,count\n")


def test_check_mds_failure_exit(tmp_path, capsys):
    # q=5, r=2, s=3, b_row=3, t=5 sits inside the stated range but is not MDS
    path = tmp_path / "c.json"
    run(capsys, "code", "build", "--q", "5", "--points", "0,1", "--s", "3", "--t", "5", "--b-row", "3",
        "--out", str(path))
    code, out, _ = run(capsys, "code", "check-mds", str(path), "--expect-mds")
    assert code == 3 and "not MDS" in out
    assert run(capsys, "code", "check-mds", str(path))[0] == 0


def test_compare(capsys):
    code, out, _ = run(capsys, "code", "compare", "--q", "5", "--points", "1,3,4", "--s", "2", "--t", "4",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["agrees_with_closed_form"]
    rows = {r["quantity"]: r for r in doc["rows"]}
    assert (rows["length"]["C1"], rows["length"]["C2"]) == ("6", "4")
    assert (rows["relative distance"]["C1"], rows["relative distance"]["C2"]) == ("1/2", "3/4")
    assert rows["relative distance"]["remark"] == "C2 has advantage in error correction"


def test_poset_show(capsys):
    code, out, _ = run(capsys, "poset", "show", "--s", "3", "--r", "3", "--b-row", "2", "--format", "json")
    assert code == 0 and json.loads(out)["edges"] == [[1, 4], [2, 4], [3, 4], [4, 7], [4, 8], [4, 9]]
    code, out, _ = run(capsys, "poset", "show", "--s", "2", "--r", "3")
    assert code == 0 and "v1 -> v4;" in out and "v3 -> v6;" in out


def test_ag_commands(tmp_path, capsys):
    path = tmp_path / "ag.json"
    code, _, _ = run(capsys, "ag", "build", "--q", "5", "--places", "1,3,4", "--divisor", "P1:0,P2:0,P3:0,Pinf:3",
                     "--s", "2", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "ag", "verify", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["distance"] == 3 and doc["dim"] == 2


def test_mds_ineq(capsys):
    code, out, _ = run(capsys, "ag", "mds-ineq", "--g", "2", "--r", "2", "--s", "3", "--k", "1",
                       "--h", "1000", "--Ak", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] is True and doc["lhs"] == 20


def test_sweep_exit_codes(capsys):
    code, out, _ = run(capsys, "sweep", "--q", "3", "--s", "2", "--t-rule", "strict")
    assert code == 0 and " 0 FAIL" in out
    code, out, _ = run(capsys, "sweep", "--q", "5", "--s", "3")
    assert code == 3 and "FAIL" in out
    code, out, _ = run(capsys, "sweep", "--q", "3", "--s", "2", "--extra-t", "1")
    assert "ParameterOutOfRange" in out


def test_sweep_workers_identical_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "sweep", "--q", "3,4", "--s", "2,3", "--workers", "1", "--out", str(a))
    run(capsys, "sweep", "--q", "3,4", "--s", "2,3", "--workers", "8", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_error_exit_codes(tmp_path, capsys, monkeypatch):
    assert run(capsys, "code", "build", "--q", "6", "--points", "1,2", "--s", "2", "--t", "2",
               "--out", str(tmp_path / "x.json"))[0] == 2
    assert run(capsys, "code", "build", "--q", "5", "--points", "1,3,4", "--s", "2", "--t", "9",
               "--out", str(tmp_path / "x.json"))[0] == 2
    assert run(capsys, "code", "compare", "--q", "5", "--points", "1,1", "--s", "2", "--t", "2")[0] == 2
    path = tmp_path / "c.json"
    run(capsys, "code", "build", "--q", "5", "--points", "1,3,4", "--s", "2", "--t", "4", "--out", str(path))
    assert run(capsys, "code", "weights", str(path), "--budget", "10")[0] == 4
    monkeypatch.setenv("POSETCODE_BUDGET", "10")
    assert run(capsys, "code", "weights", str(path))[0] == 4
    with pytest.raises(SystemExit) as exc:
        main(["code", "weights", str(path), "--budget", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["code", "weights", str(path), "--no-such-flag"])
    assert exc.value.code == 2


def test_console_script():
    exe = shutil.which("posetcode")
    cmd = [exe] if exe else [sys.executable, "-m", "posetcode.cli"]
    res = subprocess.run(cmd + ["code", "compare", "--q", "5", "--points", "1,3,4", "--s", "2", "--t", "4"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "C2 (bottleneck): [4,2,3]" in res.stdout
