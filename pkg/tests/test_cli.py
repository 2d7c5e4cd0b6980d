import dataclasses
import json

import jsonschema
import pytest

from symcirc import cli
from symcirc.polyring import UniPoly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out.strip().splitlines()
    return code, json.loads(out[-1])


def test_gcd_example(capsys):
    code, rep = run(capsys, "gcd", "--field", "7", "--f", "6,0,1", "--g", "-1,1", "--check")
    assert code == 0
    assert rep["result"]["coeffs"] == [6, 1]
    assert rep["oracle_agree"] is True
    jsonschema.validate(rep, cli.REPORT_SCHEMA)


def test_gcd_coprime_over_large_prime(capsys):
    code, rep = run(capsys, "gcd", "--field", "10007", "--f", "6,0,1", "--g", "-1,1")
    assert code == 0 and rep["result"]["coeffs"] == [1]
    code, rep = run(capsys, "gcd", "--field", "10007", "--f", "-1,0,1", "--g", "-1,1")
    assert rep["result"]["coeffs"] == [10006, 1]


@pytest.mark.parametrize("argv", [
    ["lcm", "--field", "10007", "--f", "2,-3,1", "--g", "-1,1"],
    ["filter", "--field", "10007", "--f", "-2,5,-4,1", "--g", "-1,1"],
    ["filter", "--field", "10007", "--f", "-2,5,-4,1", "--g", "-1,1", "--condition", "zero"],
    ["resultant", "--field", "2^4", "--f", "1,1,1", "--g", "0,1,1"],
    ["symdec", "--example", "powersum3", "--field", "10007"],
    ["symdec", "--example", "sumsquare2", "--field", "2^12"],
    ["rootlift", "--example", "catalan", "--field", "10007", "--d", "4"],
    ["factorpow", "--example", "f2-square"],
])
def test_commands_agree_with_oracle(capsys, argv):
    code, rep = run(capsys, *argv, "--check")
    assert code == 0, rep
    assert rep["oracle_agree"] is True
    jsonschema.validate(rep, cli.REPORT_SCHEMA)


def test_rootlift_and_factorpow_values(capsys):
    _, rep = run(capsys, "rootlift", "--example", "catalan", "--field", "10007", "--d", "4")
    assert rep["result"]["coeffs"] == [0, 1, 1, 2, 5]
    _, rep = run(capsys, "factorpow", "--example", "f2-square")
    assert rep["result"]["text"] == "y^2 + t^2"


@pytest.mark.parametrize("argv", [
    ["gcd", "--field", "7", "--f", "1,x", "--g", "1"],
    ["gcd", "--field", "6", "--f", "1,1", "--g", "1"],
    ["gcd", "--field", "7", "--f", "1,1"],
    ["symdec", "--example", "nope", "--field", "7"],
])
def test_bad_input_exit_1(capsys, argv):
    code, rep = run(capsys, *argv)
    assert code == 1 and "error" in rep


def test_field_too_small_reports_required_q(capsys):
    code, rep = run(capsys, "symdec", "--example", "powersum3", "--field", "5")
    assert code == 1
    assert rep["error"]["type"] == "FieldTooSmall" and rep["error"]["required_q"] > 5


def test_fuzz_gcd_clean(capsys, tmp_path):
    code, rep = run(capsys, "fuzz", "--suite", "gcd", "--trials", "200", "--seed", "7", "--out", str(tmp_path))
    assert code == 0 and rep["mismatches"] == 0
    assert not list(tmp_path.iterdir())


def test_fuzz_trials_are_deterministic():
    F = cli.parse_field("10007")
    for suite in cli.SUITES[:-1]:
        a = cli.make_trial(suite, F, cli._trial_rng(3, 5), 4)
        b = cli.make_trial(suite, F, cli._trial_rng(3, 5), 4)
        assert a == b
    assert cli.make_trial("gcd", F, cli._trial_rng(3, 5), 4) != cli.make_trial("gcd", F, cli._trial_rng(3, 6), 4)


def test_injected_bug_is_caught_and_replays(capsys, tmp_path, monkeypatch):
    real = cli.gcdres.gcd_eval_batch

    def broken(pairs):
        out = real(pairs)
        return [dataclasses.replace(r, gcd=r.gcd * UniPoly(r.gcd.ctx, (1, 1))) for r in out]

    monkeypatch.setattr(cli.gcdres, "gcd_eval_batch", broken)
    code, rep = run(capsys, "fuzz", "--suite", "gcd", "--trials", "5", "--seed", "1", "--out", str(tmp_path))
    assert code == 2 and rep["mismatches"] == 5
    dumped = sorted(tmp_path.iterdir())
    assert len(dumped) == 5
    code, rep = run(capsys, "fuzz", "--replay", str(dumped[0]))
    assert code == 2 and rep["replay"]["regenerated"] and rep["replay"]["mismatch"]
    monkeypatch.setattr(cli.gcdres, "gcd_eval_batch", real)
    code, rep = run(capsys, "fuzz", "--replay", str(dumped[0]))
    assert code == 0 and rep["replay"]["mismatch"] is None
