import json
import subprocess
import sys

import pytest

from urysohn.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_build_small_window(capsys):
    code, cert = run_json(capsys, "urysohn", "build", "--S", "0,1/2,1", "--points", "50")
    assert code == 0 and cert["ok"] and len(cert["window"]) == 50
    assert {v for row in cert["dist"] for v in row} <= {"0", "1/2", "1"}


def test_build_alias_matches(capsys):
    a = run(capsys, "build", "--S", "0,1,2", "--points", "12")
    b = run(capsys, "urysohn", "build", "--S", "0,1,2", "--points", "12")
    assert a == b


def test_unknown_flag_is_usage_error(capsys):
    code, _, err = run(capsys, "urysohn", "build", "--bogus")
    assert code == 2 and "bogus" in err
    code, _, err = run(capsys, "urysohn", "build", "--bogus", "--json-errors")
    assert code == 2 and json.loads(err)["exit"] == 2


def test_bad_distance_set_is_usage_error(capsys):
    assert run(capsys, "urysohn", "build", "--S", "0,1,3")[0] == 2


def test_generic_run_then_verify(capsys, tmp_path):
    out = tmp_path / "t.json"
    code = main(["generic", "run", "--preset", "free-product-ZZ", "--steps", "10", "--seed", "1",
                 "--out", str(out)])
    assert code == 0
    tr = json.loads(out.read_text())
    assert len(tr["steps"]) == 10
    assert main(["generic", "verify", str(out)]) == 0
    assert main(["verify", str(out)]) == 0
    capsys.readouterr()


def test_tampered_distance_is_flagged(capsys, tmp_path):
    _, cert = run_json(capsys, "urysohn", "build", "--S", "0,1/2,1", "--points", "10")
    i, j = 1, 3
    cert["dist"][i][j] = cert["dist"][j][i] = "1" if cert["dist"][i][j] != "1" else "1/2"
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(cert))
    code, out, _ = run(capsys, "verify", str(f))
    assert code == 1 and not json.loads(out)["ok"]


def test_tampered_transcript_is_flagged(capsys, tmp_path):
    _, tr = run_json(capsys, "generic", "run", "--preset", "surface", "--steps", "6", "--seed", "2")
    tr["alpha"][0][1] = tr["alpha"][1][1]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(tr))
    assert run(capsys, "generic", "verify", str(f))[0] == 1


def test_empty_certificate_passes(capsys, tmp_path):
    f = tmp_path / "empty.json"
    f.write_text("{}")
    code, rep = run_json(capsys, "verify", str(f))
    assert code == 0 and rep["ok"] and rep["checked"] == 0


def test_metric_and_katetov_commands(capsys):
    Q1 = {"kind": "rational_bounded", "cap": "1"}
    space = json.dumps({"points": ["a", "b"], "dist": [["0", "1/2"], ["1/2", "0"]], "S": Q1})
    code, cert = run_json(capsys, "metric", "check", space)
    assert code == 0 and cert["ok"]
    code, cert = run_json(capsys, "katetov", "extend", "--space", space, "--f", '[["a", "1/4"]]')
    assert code == 0 and cert["values"] == {"a": "1/4", "b": "3/4"}
    bad = json.dumps({"points": ["a", "b", "c"], "dist": [["0", "1/4", "1"], ["1/4", "0", "1/4"],
                                                          ["1", "1/4", "0"]], "S": Q1})
    assert run(capsys, "metric", "check", bad)[0] == 1


def test_certificates_roundtrip_through_verify(capsys, tmp_path):
    commands = [
        ["urysohn", "build", "--S", "Q[0,1]", "--points", "15", "--denominator", "4"],
        ["action", "check", "--group", "free-product-ZZ", "--property", "free", "--samples", "5"],
        ["unbounded", "witness", "--K", "40"],
        ["perm", "biindex", "--n", "6", "--k", "2"],
        ["perm", "tr", "--sigma", "paired-shift", "--X", "evens"],
        ["perm", "blocks", "--gens", "(0 1);(2 3);(0 2)(1 3);(2 4)(3 5)", "--n", "6"],
        ["perm", "schlichting", "--gens", "(0 1);(0 1 2 3 4)", "--depth", "6"],
    ]
    for i, argv in enumerate(commands):
        code, out, _ = run(capsys, *argv)
        assert code == 0, argv
        again = run(capsys, *argv)[1]
        assert out == again
        f = tmp_path / f"c{i}.json"
        f.write_text(out)
        assert run(capsys, "verify", str(f))[0] == 0, argv


def test_perm_results(capsys):
    assert run_json(capsys, "perm", "biindex", "--n", "6", "--k", "2")[1]["biindex"] == 3
    cert = run_json(capsys, "perm", "tr", "--sigma", "paired-shift", "--X", "evens")[1]
    assert cert["tr"] == -1 and cert["symmetric_difference"] == [0]
    cert = run_json(capsys, "perm", "blocks", "--gens", "(0 1);(2 3);(0 2)(1 3);(2 4)(3 5)", "--n", "6")[1]
    assert not cert["primitive"] and len(cert["block"]) == 2
    assert run(capsys, "perm", "tr", "--sigma", "map ; from 0 shifts 1")[0] == 2


@pytest.mark.parametrize("argv", [["--help"], ["perm", "--help"]])
def test_help(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 0


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "urysohn.cli", "perm", "biindex", "--n", "5", "--k", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["biindex"] == 2
