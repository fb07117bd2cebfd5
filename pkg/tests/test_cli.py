from __future__ import annotations

import io
import json

import pytest

from idealpowers.cli import main


def _run(script, *flags, tmp_path, capsys):
    path = tmp_path / "script.ip"
    path.write_text(script)
    code = main(["run", str(path), *flags])
    out, err = capsys.readouterr()
    return code, out, err


def test_triangle_depth(tmp_path, capsys):
    code, out, _ = _run("ring A=[x,y,z]; ideal I=(x*y,y*z,x*z); depth A/I;", tmp_path=tmp_path, capsys=capsys)
    assert code == 0 and out == "1\n"


def test_empty_script_json(tmp_path, capsys):
    code, out, _ = _run("", "--format", "json", tmp_path=tmp_path, capsys=capsys)
    doc = json.loads(out)
    assert code == 0 and doc["commands"] == [] and set(doc) == {"version", "characteristic", "commands"}


def test_json_schema_and_reserialization(tmp_path, capsys):
    code, out, _ = _run("ring A=[x,y]; ideal I=(x^2,x*y); depth A/I; reg ideal(I); betti I; dim A/I;",
                        "--format", "json", "--no-timing", tmp_path=tmp_path, capsys=capsys)
    doc = json.loads(out)
    assert code == 0
    assert [c["kind"] for c in doc["commands"]] == ["depth", "reg", "betti", "dim"]
    assert [c["output"] for c in doc["commands"] if c["kind"] != "betti"] == [0, 2, 1]
    assert all(set(c) == {"kind", "input", "output", "timing_ms"} for c in doc["commands"])
    assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == out


def test_stdin_and_bare_script_argument(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("ring A=[x]; ideal I=(x^3); reg A/I;"))
    assert main([]) == 0
    assert capsys.readouterr().out == "2\n"
    path = tmp_path / "s.ip"
    path.write_text("ring A=[x]; ideal I=(x^3); depth I/I^2;")
    assert main([str(path)]) == 0
    assert capsys.readouterr().out == "0\n"


@pytest.mark.parametrize("fmt", ["text", "csv", "json"])
def test_threads_give_identical_output(fmt, tmp_path, capsys):
    script = "ring A=[x,y,z]; ideal I=(x*y,y*z,x*z); profile I max=3; betti A/I^2;"
    a = _run(script, "--format", fmt, "--no-timing", tmp_path=tmp_path, capsys=capsys)
    b = _run(script, "--format", fmt, "--no-timing", "--threads", "4", tmp_path=tmp_path, capsys=capsys)
    assert a == b and a[0] == 0


def test_profile_csv_columns(tmp_path, capsys):
    _, out, _ = _run("ring A=[x,y]; profile (x) max=3;", "--format", "csv", tmp_path=tmp_path, capsys=capsys)
    assert out.splitlines()[:2] == ["n,depth_quotient,reg_power,depth_graded_piece,reg_graded_piece",
                                    "1,1,1,1,0"]


def test_verify_exit_codes(tmp_path, capsys):
    ok = _run("ring A=[x,y]; ring B=[u]; verify L1 I=(x^2,x*y), J=(u^3);", tmp_path=tmp_path, capsys=capsys)
    assert ok[0] == 0
    bad = _run("verify suite count=5 n=2 claims=T-EQUALITY-R offset=-1;", tmp_path=tmp_path, capsys=capsys)
    assert bad[0] == 1


def test_verify_suite_is_seeded(tmp_path, capsys):
    script = "verify suite count=4 n=2 claims=L1+DECOMP;"
    a = _run(script, "--format", "json", "--no-timing", "--seed", "7", tmp_path=tmp_path, capsys=capsys)
    b = _run(script, "--format", "json", "--no-timing", "--seed", "7", tmp_path=tmp_path, capsys=capsys)
    c = _run(script, "--format", "json", "--no-timing", "--seed", "8", tmp_path=tmp_path, capsys=capsys)
    assert a == b and a[0] == 0
    assert a[1] != c[1]


def test_parse_error_exit_code(tmp_path, capsys):
    code, out, err = _run("ideal I=(x^2;", tmp_path=tmp_path, capsys=capsys)
    assert code == 2 and out == ""
    assert "line 1, column 13" in err


def test_engine_error_reports_command_context(tmp_path, capsys):
    code, out, err = _run("ring A=[x,y]; ideal I=(x); dim I/I^2;", tmp_path=tmp_path, capsys=capsys)
    assert code == 2 and "dim is only available" in err


def test_construct_subcommand(capsys):
    code = main(["construct", "--f", "1", "--tail", "0", "--check-up-to", "3", "--format", "json", "--no-timing"])
    doc = json.loads(capsys.readouterr().out)
    out = doc["commands"][0]["output"]
    assert code == 0 and out["verdict"] == "pass" and out["depth_quotient"] == [1, 0, 0]


def test_construct_rejects_increasing_spec(capsys):
    assert main(["construct", "--f", "0,1"]) == 2
    assert "non-increasing" in capsys.readouterr().err


def test_characteristic_flag(tmp_path, capsys):
    script = ("ring A=[a,b,c,d,e,f]; ideal I=(a*b*d, a*b*f, a*c*d, a*c*e, a*e*f, b*c*e, b*c*f, b*d*e, c*d*f, d*e*f);"
              "depth A/I;")
    assert _run(script, tmp_path=tmp_path, capsys=capsys)[1] == "3\n"
    assert _run(script, "--char", "2", tmp_path=tmp_path, capsys=capsys)[1] == "2\n"
