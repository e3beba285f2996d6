import json
import subprocess
import sys

from carterkit.cli import main, run, strip_timings


def test_carter_on_sym4():
    code, rep = run(["carter", "--expr", "(sym 4)"])
    assert code == 0
    assert rep["outcome"]["status"] == "exists" and rep["outcome"]["subgroup"]["order"] == 8
    assert rep["group_order"] == 24 and rep["input"] == "(sym 4)"


def test_brute_on_alt5_is_empty_with_exit_zero():
    code, rep = run(["brute", "--expr", "(alt 5)"])
    assert code == 0 and rep["outcome"]["carter_classes"] == []


def test_exists_reports_not_exists_with_exit_zero():
    code, rep = run(["exists", "--expr", "(direct (alt 5) (cyclic 2))"])
    assert code == 0 and rep["outcome"] == {"status": "not_exists"}


def test_parse_error_exit_one():
    code, rep = run(["carter", "--expr", "(sym 4"])
    assert code == 1
    assert rep["error"]["phase"] == "parse" and rep["error"]["line"] == 1


def test_capacity_error_exit_two():
    code, rep = run(["brute", "--expr", "(sym 6)", "--budget", "100"])
    assert code == 2 and rep["limits_hit"]


def test_usage_errors_exit_one():
    assert run(["carter"])[0] == 1
    assert run(["frobnicate"])[0] == 1
    assert run(["carter", "--expr", "(sym 3)", "--spec", "x"])[0] == 1


def test_missing_spec_file_exit_one(tmp_path):
    code, rep = run(["carter", "--spec", str(tmp_path / "nope.txt")])
    assert code == 1 and "error" in rep


def test_spec_file_and_hints(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("# wreath\n(wreath (sym 3) 2)\n")
    code, rep = run(["chief-series", "--spec", str(f), "--series-hints", "base"])
    assert code == 0
    assert [x["order"] for x in rep["outcome"]["factors"]] == [2, 2, 2, 9]
    assert run(["chief-series", "--spec", str(f), "--series-hints", "nothing"])[0] == 1


def test_condition_e_report():
    code, rep = run(["condition-e", "--expr", "(alt 5)"])
    assert code == 0
    ce = rep["outcome"]["condition_e"]
    assert not ce["satisfied"] and ce["failure"]["aut_order"] == 60


def test_json_output_is_stable(capsys):
    outs = []
    for _ in range(2):
        assert main(["carter", "--expr", "(wreath (sym 3) 2)", "--json", "--seed", "0"]) == 0
        outs.append(strip_timings(json.loads(capsys.readouterr().out)))
    assert outs[0] == outs[1]
    assert outs[0]["schema"] == 1


def test_human_output(capsys):
    assert main(["brute", "--expr", "(alt 5)"]) == 0
    out = capsys.readouterr().out
    assert "Carter classes: none" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "carterkit", "exists", "--expr", "(sym 3)", "--json"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["outcome"]["status"] == "exists"
