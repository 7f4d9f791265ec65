import json
import subprocess
import sys
from pathlib import Path

import pytest

from nullkit.cli import JobSpec, main, run
from nullkit.field import make_field
from nullkit.parsing import parse_poly, parse_text

FIXTURES = Path(__file__).parent / "fixtures"


def report(capsys, *argv):
    status = main([*argv, "--no-timing"])
    return status, json.loads(capsys.readouterr().out)


def test_radical_member(capsys):
    status, out = report(capsys, "radical", "--seed", "1", "--trials", "15", str(FIXTURES / "radical_member.txt"))
    assert status == 0 and out["answer"] == "member"
    assert out["seed"] == 1 and out["trials"] == 15
    assert out["field"]["p"] == 7 and "confidence_note" in out


def test_trdeg(capsys):
    status, out = report(capsys, "trdeg", str(FIXTURES / "trdeg_powers.txt"))
    assert status == 0 and out["answer"] == 1


def test_hn_answers(capsys):
    assert report(capsys, "hn", str(FIXTURES / "hn_empty.txt"))[1]["answer"] == "empty"
    assert report(capsys, "hn", str(FIXTURES / "hn_nonempty.txt"))[1]["answer"] == "nonempty"
    assert report(capsys, "hn", "--r", "1", str(FIXTURES / "composed_empty.txt"))[1]["answer"] == "empty"


def test_cert_output_reparses(capsys):
    status, out = report(capsys, "cert", str(FIXTURES / "cert_pair.txt"))
    assert status == 0 and out["answer"] == "certificate" and out["bound"] == 1
    ctx = make_field(out["field"]["p"], out["field"]["order"])
    f = [parse_poly(s, ctx, 1) for s in out["f"]]
    h = [parse_poly(s, ctx, 1) for s in out["h"]]
    total = f[0] * h[0] + f[1] * h[1]
    assert total.is_constant() and total.constant_term() == 1


def test_cert_nonempty_reports_no_certificate(capsys):
    status, out = report(capsys, "cert", str(FIXTURES / "hn_nonempty.txt"))
    assert status == 0 and out["answer"] == "no_certificate"


def test_reduce_zerodim_threegen(capsys):
    status, out = report(capsys, "reduce", "--r", "1", str(FIXTURES / "symmetric.txt"))
    assert status == 0 and len(out["answer"]) == 2 and out["r"] == 1
    assert all(row[:i] == [0] * i for i, row in enumerate(out["combination"]))
    status, out = report(capsys, "zerodim", str(FIXTURES / "hn_nonempty.txt"))
    assert out["answer"] == 0
    status, out = report(capsys, "threegen", str(FIXTURES / "threegen_nonmember.txt"))
    assert out["answer"]["t"] == ["x2^2", "x3^2", "x1*x2"] and out["answer"]["g"] == "x2*x3"


def test_text_format(capsys):
    assert main(["hn", "--format", "text", "--no-timing", str(FIXTURES / "hn_empty.txt")]) == 0
    assert "answer: empty" in capsys.readouterr().out


def test_parse_error_exit_status(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("field p=7\nf: x1^\n")
    status, out = report(capsys, "hn", str(bad))
    assert status == 2 and out["error"] == "ParseError" and "line 2, col 7" in out["message"]


def test_missing_g_and_budget(tmp_path, capsys):
    status, out = report(capsys, "radical", str(FIXTURES / "hn_empty.txt"))
    assert status == 2 and "g:" in out["message"]
    hard = tmp_path / "hard.txt"
    hard.write_text("field p=101\nf: x1^3 + x2^2 + x3\nf: x1*x2*x3 + 1\nf: x2^3 + x1 + x3^2\n")
    status, out = report(capsys, "zerodim", "--gb-budget", "1", str(hard))
    assert status == 2 and out["error"] == "BudgetExceeded"
    status, out = report(capsys, "zerodim", str(hard))
    assert status == 0 and out["answer"] == 0


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("NULLKIT_SEED", "42")
    _, out = report(capsys, "trdeg", str(FIXTURES / "trdeg_powers.txt"))
    assert out["seed"] == 42
    _, out = report(capsys, "trdeg", "--seed", "5", str(FIXTURES / "trdeg_powers.txt"))
    assert out["seed"] == 5


def test_jobspec_validation():
    with pytest.raises(ValueError):
        JobSpec("hn", "x.txt", 0, trials=0)
    with pytest.raises(ValueError):
        JobSpec("solve", "x.txt", 0)


def test_wall_time_reported_by_default():
    status, rep = run(JobSpec("trdeg", str(FIXTURES / "trdeg_powers.txt"), 0))
    assert status == 0 and rep["wall_time_s"] >= 0


@pytest.mark.parametrize("command,fixture", [("hn", "symmetric.txt"), ("radical", "symmetric.txt"), ("cert", "hn_empty.txt")])
def test_reports_byte_identical_across_processes(command, fixture):
    argv = [sys.executable, "-m", "nullkit.cli", command, "--seed", "9", "--no-timing", str(FIXTURES / fixture)]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_every_fixture_runs(capsys):
    for path in sorted(FIXTURES.glob("*.txt")):
        parsed = parse_text(path.read_text())
        status, out = report(capsys, "hn", str(path))
        assert status == 0, (path, out)
        assert out["answer"] in ("empty", "nonempty")
        if parsed.g is not None:
            assert report(capsys, "radical", str(path))[0] == 0
