import io
import json
import subprocess
import sys

import pytest

from a3char.cli import from_text, run, to_text
from a3char.genfun import golden_text


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def result(*argv):
    code, out, err = call(*argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)["result"]


def test_char_example():
    assert result("char", "-m", "1,0,1") == {"z": "-1 + z1*z3"}


def test_dim_example():
    assert result("dim", "-m", "1,0,1") == 15
    assert result("dim", "-m", "1,0,0", "--algebra", "b3") == 7
    assert result("dim", "-m", "2,1,0", "--method", "all")["agree"] is True


def test_mult_all_example():
    assert result("mult", "-m", "1,0,1", "-n", "0,0,0", "--method", "all") == {
        "closed": 3, "kostant": 3, "genfun": 3, "direct": 3, "agree": True}


def test_other_commands():
    assert result("kostant", "-k", "1,1,1", "--method", "all")["agree"] is True
    assert result("char", "-m", "2,0,0", "--method", "all")["eigenvalue"] == 18
    assert result("char", "-m", "1,0,0", "--method", "genfun") == {"z": "z1"}
    assert result("char", "-m", "0,0,1", "--algebra", "c3", "--basis", "x")["x"].count("x") > 0
    assert result("real", "-m", "1,0")["dim"] == 15
    rows = result("weights", "-m", "1,0,0")
    assert [r["value"] for r in rows] == [1, 1, 1, 1]
    rows = result("genfun-expand", "--which", "E", "--caps", "1,0,1")
    assert rows[-1] == {"m": [1, 0, 1], "value": "15"}
    rows = result("genfun-expand", "--which", "A", "-n", "0,0,0", "--caps", "1,0,1")
    assert {"m": [1, 0, 1], "n": [0, 0, 0], "value": 3} in rows
    assert result("restricted", "--algebra", "c3", "--kind", "mixed", "--caps", "1,1", "--verify")["passed"]


def test_eigenvalue_rational_is_string():
    assert result("char", "-m", "1,0,0", "--method", "all")["eigenvalue"] == "15/2"


@pytest.mark.parametrize("argv", [
    ("char",), ("char", "-m", "1,0"), ("char", "-m", "a,b,c"), ("dim", "-m", "-1,0,0"),
    ("bogus",), ("mult", "-m", "1,0,1", "-n", "3,0,0", "--method", "genfun"),
    ("genfun-expand", "--caps", "-1,2,2"), ("char", "-m", "1,0,0", "--algebra", "b3"),
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == ""
    assert err.startswith("a3char: error:") and err.count("\n") == 1


def test_deterministic_and_formats_agree():
    args = ("mult", "-m", "2,0,2", "-n", "1,0,1", "--method", "all")
    _, a, _ = call(*args)
    _, b, _ = call(*args)
    assert a == b
    _, text, _ = call(*args, "--format", "text")
    assert from_text(text) == json.loads(a)


def test_text_round_trip_nested():
    obj = {"a": [{"b": [1, 2]}, {"c": None}], "d": "x = y", "e": [], "f": {}, "g": True}
    assert from_text(to_text(obj)) == obj


def test_caps_env(monkeypatch):
    monkeypatch.setenv("A3CHAR_CAPS", "1")
    rows = result("genfun-expand", "--which", "G")
    assert len(rows) == 8
    monkeypatch.setenv("A3CHAR_CAPS", "x")
    assert call("genfun-expand")[0] == 1


def test_timing_is_opt_in():
    _, out, _ = call("dim", "-m", "1,0,0")
    assert "timing" not in json.loads(out)
    _, out, _ = call("dim", "-m", "1,0,0", "--timing")
    assert "seconds" in json.loads(out)["timing"]


def test_verification_pass():
    code, out, _ = call("genfun-verify", "--caps", "2,2,2")
    assert code == 0 and json.loads(out)["status"] == "pass"


def flipped_dir(tmp_path):
    text = golden_text("N").strip()
    assert text.startswith("1 - t2^2")
    (tmp_path / "N.txt").write_text("1 + t2^2" + text[len("1 - t2^2"):] + "\n")
    return str(tmp_path)


def test_verification_fail_exit_2(tmp_path):
    gd = flipped_dir(tmp_path)
    code, out, _ = call("genfun-verify", "--caps", "2,2,2", "--which", "G", "--golden-dir", gd)
    env = json.loads(out)
    assert code == 2 and env["status"] == "fail"
    assert env["result"][0]["counterexample"]["exponent"] == [0, 2, 0]


def test_selftest_quick_pass():
    code, out, _ = call("selftest", "--level", "quick")
    env = json.loads(out)
    assert code == 0 and env["result"]["passed"]
    assert len(env["result"]["suites"]) == 9


def test_selftest_negative_control(tmp_path):
    code, out, _ = call("selftest", "--golden-dir", flipped_dir(tmp_path))
    env = json.loads(out)
    assert code == 2
    first = next(s for s in env["result"]["suites"] if not s["passed"])
    assert first["name"] == "characters" and first["counterexample"]["m"] == [0, 2, 0]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "a3char.cli", "dim", "-m", "1,0,1", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "result = 15" in proc.stdout.splitlines()
