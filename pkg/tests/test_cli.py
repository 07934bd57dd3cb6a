from __future__ import annotations

import io

import pytest

from acembed.cli import main

from conftest import FIXTURES, GOLDEN

NAT = str(FIXTURES / "nat.fmod")
NATNUM = str(FIXTURES / "natnum.fmod")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_true(capsys):
    code, out, _ = run(capsys, "check", "--module", NATNUM, "--engine", "sml", "+(1,X:Nat)", "+(Y:Nat,+(1,3))")
    assert (code, out) == (0, "true\n")


def test_check_false(capsys):
    code, out, _ = run(capsys, "check", "--module", NATNUM, "--engine", "rogd", "+(4,4)", "+(2,+(3,1))")
    assert (code, out) == (1, "false\n")


def test_check_timeout(capsys):
    code, out, _ = run(capsys, "check", "--module", NATNUM, "--engine", "naive", "--timeout-ms", "0",
                       "+(1,+(2,+(3,4)))", "+(suc(+(1,+(2,+(3,5)))),+(suc(6),+(7,+(8,suc(suc(9))))))")
    assert (code, out) == (3, "timeout\n")


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "check", "--module", NATNUM, "+(1,", "1")
    assert code == 2 and "error" in err


def test_missing_module(capsys, tmp_path):
    code, _, err = run(capsys, "gen", "--module", str(tmp_path / "none.fmod"), "--kind", "emb")
    assert code == 2


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["check"])
    assert exc.value.code == 2


def test_gen_rogd(capsys):
    code, out, _ = run(capsys, "gen", "--module", NAT, "--kind", "rogd")
    assert code == 0
    assert out == (GOLDEN / "nat_rogd.txt").read_text()
    assert len(out.splitlines()) == 6


def test_succ(capsys):
    code, out, _ = run(capsys, "succ", "--module", NATNUM, "+(2,+(3,1))")
    assert code == 0 and len(out.splitlines()) == 6


def test_class(capsys):
    code, out, _ = run(capsys, "class", "--module", NATNUM, "+(1,2)")
    assert out.splitlines() == ["+(1,2)", "+(2,1)", "count: 2"]


def test_bench_csv(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, _, _ = run(capsys, "bench", "--module", NATNUM, "--engines", "ml,sml", "--seed", "1",
                     "--t1-depth", "3", "--t2-depths", "4", "--goals", "2", "--reps", "1", "--csv", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith("engine,goal_id")
    assert len(lines) == 5


def test_bench_empty_engines(capsys):
    code, out, _ = run(capsys, "bench", "--module", NATNUM, "--engines", "")
    assert code == 0 and out.splitlines() == ["engine,goal_id,t1_ot,t1_ft,t2_ot,t2_ft,outcome,time_ms,states,calls"]


def test_whistle(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("suc(0)\n0\n+(1,2)\nsuc(suc(0))\n1\n"))
    code, out, _ = run(capsys, "whistle", "--module", NATNUM, "--engine", "ml")
    assert code == 0
    assert out.splitlines() == ["pass", "pass", "pass", "blow 0"]
