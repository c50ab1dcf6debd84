import json

import pytest

from tamecluster import cli, denom
from tamecluster.representations import InternalInvariantError


def run(tmp_path, *args, name="report.json"):
    out = tmp_path / name
    code = cli.main([*args, "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_full_run_passes(tmp_path):
    code, report = run(tmp_path, "--quiver", "A(2,1)", "--check", "all", "--depth", "5", "--window", "8", "--rng", "7")
    assert code == 0
    names = [s["name"] for s in report["suites"]]
    assert names[0] == "dimvec" and names[-2:] == ["subfactor", "crossval"]
    assert all(s["status"] == "PASS" and s["timingMs"] is None for s in report["suites"])
    assert report["config"]["rngSeed"] == 7 and len(report["config"]["words"]) == 10


def test_reports_are_byte_identical(tmp_path):
    args = ["--quiver", "A(2,1)", "--check", "denom", "--depth", "3", "--window", "6", "--rng", "11", "--num-words", "3"]
    cli.main([*args, "--out", str(tmp_path / "a.json")])
    cli.main([*args, "--out", str(tmp_path / "b.json")])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert not list(tmp_path.glob(".*"))  # no temp files left behind


def test_timings_flag(tmp_path):
    _, report = run(tmp_path, "--quiver", "A(2,1)", "--check", "dimvec", "--window", "4", "--timings",
                    "--num-words", "2")
    assert isinstance(report["suites"][0]["timingMs"], int)


def test_malformed_quiver_file(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n2 3\n3 x\n")
    assert cli.main(["--quiver", str(bad)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_quiver_file_accepted(tmp_path):
    q = tmp_path / "tri.txt"
    q.write_text("# triangle\n1 2\n2 3\n1 3\n")
    code, report = run(tmp_path, "--quiver", str(q), "--check", "subfactor", "--window", "3")
    assert code == 0 and report["suites"][0]["status"] == "PASS"


def test_d4_subfactor_reports_uncovered(tmp_path):
    code, report = run(tmp_path, "--quiver", "D(4)", "--check", "subfactor", "--window", "4")
    assert code == 0
    suite = report["suites"][0]
    assert suite["counts"]["UNCOVERED"] == 6 and suite["counts"]["FAIL"] == 0
    assert {e["status"] for e in suite["entries"]} == {"PASS", "UNCOVERED"}


@pytest.mark.parametrize("args", [
    ["--quiver", "A(2)"],
    ["--quiver", "A(2,1)", "--depth", "-1"],
    ["--quiver", "A(2,1)", "--word", "1,4"],
    ["--quiver", "A(2,1)", "--word", "1,x"],
])
def test_config_errors(args, capsys):
    assert cli.main(args) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_dynkin_quiver_rejected(tmp_path):
    q = tmp_path / "a2.txt"
    q.write_text("1 2\n")
    assert cli.main(["--quiver", str(q)]) == 2


def test_failing_suite_exit_code(tmp_path, monkeypatch):
    monkeypatch.setattr(denom, "_correction_applies", lambda *a: False)
    code, report = run(tmp_path, "--quiver", "A(2,1)", "--check", "denom", "--word", "2", "--depth", "3")
    assert code == 1
    assert report["suites"][1]["status"] == "FAIL"


def test_internal_error_exit_code(monkeypatch, capsys):
    def boom(*a, **k):
        raise InternalInvariantError("negative Ext")
    monkeypatch.setattr(cli, "classify_subfactor", boom)
    assert cli.main(["--quiver", "A(2,1)", "--check", "subfactor"]) == 3
    assert "negative Ext" in capsys.readouterr().err


def test_stdout_report_and_csv(tmp_path, capsys):
    csv_path = tmp_path / "t.csv"
    code = cli.main(["--quiver", "A(2,1)", "--check", "denom", "--word", "1", "--depth", "2",
                     "--window", "4", "--csv", str(csv_path)])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert [s["name"] for s in report["suites"]] == ["denom[]", "denom[1]"]
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "word,object,dimVector,symbolicDen,categoricalDen" and len(lines) > 5


def test_unstable_finite_subfactor_widens_window(tmp_path):
    code, report = run(tmp_path, "--quiver", "D(6)", "--check", "subfactor", "--window", "2")
    assert code == 0
    widened = [e for e in report["suites"][0]["entries"] if "windowUsed" in e]
    assert widened and all(e["windowUsed"] > 2 and e["status"] == "PASS" for e in widened)
    assert "re-run with --window" in widened[0]["advice"]
