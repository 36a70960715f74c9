import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from k3disc import certificates
from k3disc.cli import EXIT_ERROR, EXIT_OK, EXIT_UNKNOWN, CliError, JobConfig, main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lat_info(capsys):
    code, out, _ = run(capsys, "lat-info", SAMPLES / "k3.json")
    assert code == EXIT_OK and out.strip() == "rank 22, signature (3,19), det -1, even, disc trivial"
    code, out, _ = run(capsys, "lat-info", SAMPLES / "u2.json")
    assert "disc (Z/2)^2" in out


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"gram": [[2, 1]\n')
    code, _, err = run(capsys, "lat-info", bad)
    assert code == EXIT_ERROR and "line 2" in err and "column" in err
    code, _, err = run(capsys, "lat-info", tmp_path / "missing.json")
    assert code == EXIT_ERROR and "cannot read" in err


def test_roots(capsys):
    code, out, err = run(capsys, "roots", SAMPLES / "e8_minus.json", "--norm", -2)
    assert code == EXIT_OK and len(json.loads(out)) == 240 and "240 vectors" in err
    code, out, _ = run(capsys, "roots", SAMPLES / "u2_u2.json", "--mode", "trichotomy")
    v = json.loads(out)
    assert code == EXIT_OK and v["tag"] == "NO" and v["obstruction"]["modulus"] == 4
    code, _, err = run(capsys, "roots", SAMPLES / "u2_u2.json")
    assert code == EXIT_ERROR and "negative definite" in err


def test_unknown_exit_code(capsys, tmp_path):
    f = tmp_path / "l.json"
    f.write_text(json.dumps({"gram": [[0, 3, 0], [3, 0, 0], [0, 0, 2]]}))
    code, out, _ = run(capsys, "roots", f, "--mode", "trichotomy", "--norm", 14, "--box-bound", 1)
    assert code == EXIT_UNKNOWN and json.loads(out) == {"tag": "UNKNOWN", "bound": 1}
    code, out, _ = run(capsys, "roots", f, "--mode", "trichotomy", "--norm", 14, "--box-bound", 2)
    assert code == EXIT_OK and json.loads(out)["tag"] == "YES"


def test_witness_and_replay(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    code, out, _ = run(capsys, "condition", "witness", "--golden", "--min-square", 100, "--out", out_file)
    assert code == EXIT_OK and "h^2 = " in out
    cert = json.loads(out_file.read_text())
    assert cert["kind"] == "avoidance" and cert["h_square"] > 100
    code, out, _ = run(capsys, "replay", out_file)
    assert code == EXIT_OK and "verdict NO" in out
    code, _, _ = run(capsys, "--replay", out_file)
    assert code == EXIT_OK
    cert["candidates"][0]["verdict"] = {"tag": "YES", "witness": [0] * 22}
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(cert))
    code, _, err = run(capsys, "replay", tampered)
    assert code == EXIT_ERROR and "replay failure" in err


def test_witness_exhausted(capsys):
    code, _, err = run(capsys, "condition", "witness", SAMPLES / "toy_condition.json", "--toy",
                       "--min-square", 10 ** 9, "--budget", 1, "--max-scanned", 2000)
    assert code == EXIT_UNKNOWN and "exhausted" in err


def test_point_check_and_thm23(capsys, tmp_path):
    cond = SAMPLES / "toy_condition.json"
    code, out, _ = run(capsys, "condition", "point-check", cond, "--toy", "--h", "5,4,-5,-1,-3,-5")
    assert code == EXIT_OK and out.startswith("verdict NO")
    out_file = tmp_path / "yes.json"
    code, out, _ = run(capsys, "condition", "point-check", cond, "--toy", "--h", "[1,1,-2,0,-1,-1]", "--out", out_file)
    assert code == EXIT_OK and out.startswith("verdict YES") and "witness delta" in out
    assert certificates.replay(out_file.read_text()).ok
    for name, verdict in (("toy_sub_no.json", "NO"), ("toy_sub_yes.json", "YES")):
        code, out, _ = run(capsys, "condition", "thm23", cond, "--toy", "--sublattice", SAMPLES / name)
        assert code == EXIT_OK and out.startswith(f"verdict {verdict}")
    code, _, err = run(capsys, "condition", "make", cond)
    assert code == EXIT_ERROR and "offending sublattice" in err
    code, _, err = run(capsys, "condition", "point-check", cond, "--toy", "--h", "1,0,0,0,0,0")
    assert code == EXIT_ERROR


def test_t1_and_reflective(capsys):
    code, out, _ = run(capsys, "condition", "t1-validate", SAMPLES / "t1_golden.json")
    assert code == EXIT_OK and "admissible: True" in out
    code, out, _ = run(capsys, "condition", "t1-validate", SAMPLES / "u2_u2.json")
    assert code == EXIT_OK and "admissible: False" in out and "isotropic rank 2 YES" in out
    code, out, _ = run(capsys, "condition", "reflective2", SAMPLES / "u2.json")
    assert out.strip() == "2-reflective: True"
    code, out, _ = run(capsys, "condition", "reflective2", SAMPLES / "binary_2_m6.json")
    assert out.strip() == "2-reflective: False"


def test_check_invariants(capsys):
    code, out, _ = run(capsys, "check-invariants", "--seed", 7, "--count", 10)
    assert code == EXIT_OK and "0 failures (seed 7)" in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["roots"])
    assert exc.value.code == EXIT_ERROR
    assert main([]) == EXIT_ERROR
    with pytest.raises(CliError):
        JobConfig(box_bound=0)
    with pytest.raises(CliError):
        JobConfig(moduli=(1, 4))


def test_deterministic_output(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        run(capsys, "condition", "point-check", SAMPLES / "toy_condition.json", "--toy", "--h", "5,4,-5,-1,-3,-5",
            "--out", f)
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    env = dict(os.environ)
    r = subprocess.run([sys.executable, "-m", "k3disc.cli", "lat-info", str(SAMPLES / "k3.json")],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 0 and "signature (3,19)" in r.stdout
