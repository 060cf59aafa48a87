import json
import subprocess
import sys

import pytest

from nearfin.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_axioms_m1_3x3(capsys):
    code, out, _ = run(capsys, "axioms", "--oracle", "m1", "--window", "3x3")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()[1:]] == ["PASS"] * 4


def test_axioms_m_4x4(capsys):
    code, out, _ = run(capsys, "axioms", "--oracle", "m", "--window", "4x4")
    assert code == 0 and "FAIL" not in out


def test_axioms_badfamily(capsys):
    code, out, _ = run(capsys, "axioms", "--oracle", "badfamily", "--window", "2x2")
    assert code == 1
    assert "FAIL I2" in out and "[(1,1), (1,2)]" in out


def test_axioms_sampled_mode(capsys):
    code, out, _ = run(capsys, "axioms", "--oracle", "m", "--window", "5x5", "--samples", "30")
    assert code == 0
    assert "sampled axioms on 25 elements" in out


def test_axioms_json(capsys):
    code, out, _ = run(capsys, "axioms", "--oracle", "trunc(1,m1)", "--window", "2x3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert [c["name"] for c in payload["reports"][0]["results"]] == ["I1", "I2", "I3", "I4"]


def test_witness_and_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "witness", "--k", "1..8", "--out", str(tmp_path))
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == sorted(f"k{k}.json" for k in range(1, 9))
    code, out, _ = run(capsys, "verify", str(tmp_path / "k5.json"), "--window-limit", "100")
    assert code == 0 and "FAIL" not in out


def test_witness_to_stdout_is_deterministic(capsys):
    _, a, _ = run(capsys, "witness", "--k", "3")
    _, b, _ = run(capsys, "witness", "--k", "3")
    assert a == b and json.loads(a)["k"] == 3


def test_verify_tampered_certificate(tmp_path, capsys):
    run(capsys, "witness", "--k", "5", "--out", str(tmp_path))
    path = tmp_path / "k5.json"
    rec = json.loads(path.read_text())
    rec["B"]["tails"][0]["start_row"] = 5
    path.write_text(json.dumps(rec))
    code, out, _ = run(capsys, "verify", str(path), "--window-limit", "10")
    assert code == 1
    assert "FAIL B independent in M" in out


def test_verify_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 2


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--oracle", "trunc(2,m1)", "--samples", "300")
    assert code == 0
    assert "0 mismatches" in out


def test_gap(capsys):
    code, out, _ = run(capsys, "gap", "--set", "coltail 3 4")
    assert code == 0 and out.strip() == "3"
    code, out, _ = run(capsys, "gap", "--set", "ray 1 1 1")
    assert out.strip() == "0"
    code, out, _ = run(capsys, "gap", "--set", "coltail 3 5")
    assert code == 1


def test_gap_from_file(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"finite_in": [], "tails": [{"type": "column", "col": 6, "start_row": 7}], "finite_out": []}))
    code, out, _ = run(capsys, "gap", "--file", str(path), "--format", "json")
    assert code == 0 and json.loads(out)["gap"] == 6


def test_gap_toy_from_file(tmp_path, capsys):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"cofinite": [3, 8]}))
    code, out, _ = run(capsys, "gap", "--oracle", "toy", "--file", str(path))
    assert code == 0 and out.strip() == "2"


@pytest.mark.parametrize(
    "argv",
    [
        ["axioms", "--oracle", "nope"],
        ["axioms", "--window", "3by3"],
        ["axioms", "--oracle", "m1", "--window", "0x3"],
        ["witness", "--k", "0"],
        ["witness", "--k", "x"],
        ["gap"],
        ["gap", "--set", "coltail"],
        ["gap", "--oracle", "toy", "--set", "coltail 1 1"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nearfin", "gap", "--set", "coltail 2 3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "2"
