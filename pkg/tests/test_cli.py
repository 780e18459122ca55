import json

import pytest

from qksl import report
from qksl.cli import main


def test_unknown_suite_exit_2(capsys):
    assert main(["verify", "bogus"]) == 2


def test_verify_summe(capsys):
    assert main(["verify", "summe", "--n-max", "3", "--no-timing"]) == 0
    out = capsys.readouterr().out
    assert "PASS    summe              n=3 r=3 s=3" in out


def test_verify_suite_flag(capsys):
    assert main(["verify", "--suite", "iota", "--no-timing"]) == 0


def test_verify_wolf_table(capsys):
    assert main(["verify", "wolf"]) == 0
    out = capsys.readouterr().out
    rows = [l for l in out.splitlines() if l.endswith(("REGULAR", "DEGENERATE"))]
    assert len(rows) == 8
    assert [l.split()[0] for l in rows if l.endswith("DEGENERATE")] == ["Sp(n+1)/Sp(1)Sp(n)"]


def test_json_deterministic(capsys, monkeypatch):
    main(["verify", "kom2", "--json", "--no-timing"])
    a = capsys.readouterr().out
    monkeypatch.setenv("QKSL_THREADS", "2")
    main(["verify", "kom2", "--json", "--no-timing"])
    b = capsys.readouterr().out
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == 1 and doc["status"] == "pass" and doc["suite"] == "kom2"
    assert all("timing" not in i for i in doc["instances"])


def test_dims(capsys):
    assert main(["dims", "2"]) == 0
    out = capsys.readouterr().out
    assert "rank S_1 = 8" in out and "sum = 16" in out
    assert main(["dims", "1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["ranks"] == [2, 2]


def test_wolf_table_json(capsys):
    assert main(["wolf-table", "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["rows"]) == 8


def test_skipped_instances_do_not_fail():
    reps = report.run_suite("twistor", n_max=2, r_max=1)
    assert {r.status for r in reps} == {"pass", "skipped"}
    assert report.aggregate(reps) == "pass"


def test_failure_carries_witness(monkeypatch):
    def broken(n, s):
        raise ArithmeticError("boom")
    monkeypatch.setitem(report.RUNNERS, "kom1", broken)
    r = report.run_instance("kom1", {"n": 2, "s": 1})
    assert r.status == "fail" and "boom" in r.witness["error"]
    assert report.aggregate([r]) == "fail"
