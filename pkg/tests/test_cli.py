import json
import os

import pytest

from zsum.cli import (
    EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, SCHEMA, build_parser, main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_davenport(capsys):
    code, out, _ = run(capsys, "davenport", "3,3")
    assert code == EXIT_OK and out.splitlines()[0] == "D(3^2) = 5"


def test_dm(capsys):
    code, out, _ = run(capsys, "dm", "3,3", "1", "2")
    assert code == EXIT_OK and out.split() [2::3] == ["5", "8"]


def test_solve_mod_example(capsys):
    code, out, _ = run(capsys, "solve-mod", "2", "1", "--n", "4")
    assert code == EXIT_OK and out.strip() == "unsolvable"


def test_solve_mod_pattern(capsys):
    code, out, _ = run(capsys, "solve-mod", "1; 1", "0 3")
    assert "solvable exactly for n in {1, 3}" in out


def test_structured_output(capsys):
    code, out, _ = run(capsys, "snf", "2 4; 6 8", "--format", "structured")
    lines = out.splitlines()
    assert lines[0] == SCHEMA
    rec = json.loads(lines[1])
    assert rec["diagonal"] == [2, 4]


def test_output_is_deterministic(capsys):
    a = run(capsys, "completions", "5", "--size", "6")
    b = run(capsys, "completions", "5", "--size", "6")
    assert a == b and a[0] == EXIT_OK


def test_malformed_inputs(capsys):
    assert run(capsys, "davenport", "3,x")[0] == EXIT_INPUT
    assert run(capsys, "snf", "1 2; 3")[0] == EXIT_INPUT
    assert run(capsys, "completions", "5", "--multiset", "(1,0")[0] == EXIT_INPUT


def test_budget_exhaustion(capsys):
    assert run(capsys, "davenport", "3^3", "--budget", "10")[0] == EXIT_BUDGET


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_every_subcommand_has_help_with_example():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, sp in sub.choices.items():
        text = sp.format_help()
        assert "example: zsum " + name in text


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "4", "3", "6")
    assert code == EXIT_OK and "c_defect" in out and "n_1 bound" in out


def test_enumerate_and_certificates(tmp_path, capsys):
    code, out, _ = run(capsys, "enumerate-a13", "--out", str(tmp_path))
    assert code == EXIT_OK and out.startswith("15 orbit representatives")
    assert os.path.exists(tmp_path / "candidates_13_2.txt")


def test_verify_cert_rejects_garbage(tmp_path, capsys):
    p = tmp_path / "x.cert"
    p.write_text("# zsum certificate v1\nstatus: REFUTED\n")
    assert run(capsys, "verify-cert", str(p))[0] == EXIT_INPUT


def test_property_b_negative_exit_code(capsys, monkeypatch):
    import zsum.rank2 as rank2
    monkeypatch.setattr(rank2, "property_b", lambda n, budget=None: False)
    assert run(capsys, "property-b", "5")[0] == EXIT_NEGATIVE
