"""The solvedeg command line interface, run in process."""

import json

import pytest

from solvedeg.cli import _parse_compute, build_parser, main
from solvedeg.errors import UsageError

QUADRICS = "field 10007\nvars x y\npoly x^2 + y^2\npoly x*y\n"
FALLS = "field 5\nvars x1 x2\npoly x1*x2 + x2\npoly x2^2 - 1\npoly x1^4 - 1\n"


@pytest.fixture()
def quadrics_file(tmp_path):
    path = tmp_path / "quadrics.txt"
    path.write_text(QUADRICS, encoding="utf-8")
    return str(path)


@pytest.fixture()
def falls_file(tmp_path):
    path = tmp_path / "falls.txt"
    path.write_text(FALLS, encoding="utf-8")
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    lines = out.splitlines(keepends=True)
    start = next(i for i, line in enumerate(lines) if line.rstrip("\n") == "{")
    return code, "".join(lines[:start]), json.loads("".join(lines[start:]))


def test_parse_compute():
    assert _parse_compute(None) is None
    assert _parse_compute("sd,lfd") == ("sd", "lfd")
    assert _parse_compute(" sd , sd ,maxgb") == ("sd", "maxgb")
    with pytest.raises(UsageError, match="unknown --compute"):
        _parse_compute("sd,bogus")
    with pytest.raises(UsageError, match="at least one"):
        _parse_compute(" , ")


def test_invariants_text_report(capsys, quadrics_file):
    code = main(["invariants", quadrics_file, "--compute", "maxgb,sd,lfd"])
    out = capsys.readouterr().out
    assert code == 0
    assert "system: field 10007, vars x y, 2 generators" in out
    assert "solving degree 3" in out
    assert "identity ok" in out
    assert "last fall degree: 0" in out
    assert "no fall" in out


def test_invariants_json_stdout(capsys, quadrics_file):
    code, text, payload = run_json(
        capsys, ["invariants", quadrics_file, "--compute", "maxgb,sd", "--json", "-"]
    )
    assert code == 0
    assert "solving degree 3" in text
    assert payload["schema"] == 1
    assert payload["system"]["p"] == 10007
    assert payload["system"]["vars"] == ["x", "y"]
    assert payload["invariants"]["orders"][0]["solving_degree"] == 3
    assert "timing_ms" in payload and "total" in payload["timing_ms"]


def test_json_payload_is_stable_apart_from_timing(capsys, quadrics_file):
    argv = ["invariants", quadrics_file, "--compute", "maxgb,sd", "--json", "-"]
    _, _, first = run_json(capsys, argv)
    _, _, second = run_json(capsys, argv)
    first.pop("timing_ms")
    second.pop("timing_ms")
    assert first == second


def test_invariants_json_file(tmp_path, capsys, quadrics_file):
    out_path = tmp_path / "report.json"
    code = main(["invariants", quadrics_file, "--compute", "maxgb",
                 "--json", str(out_path)])
    capsys.readouterr()
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["schema"] == 1
    assert payload["invariants"]["orders"][0]["max_gb_degree"] == 3


def test_invariants_trace(capsys, falls_file):
    code = main(["invariants", falls_file, "--compute", "maxgb,sd,lfd", "--trace"])
    out = capsys.readouterr().out
    assert code == 0
    assert "trace:" in out
    assert "d=  0" in out and "dim=" in out and "added=" in out
    assert "fall:" in out, "the falling elements are annotated in the trace"


def test_invariants_repeated_orders(capsys, quadrics_file):
    code, _, payload = run_json(
        capsys,
        ["invariants", quadrics_file, "--compute", "maxgb,sd",
         "--order", "drl", "--order", "grlex", "--json", "-"],
    )
    assert code == 0
    orders = payload["invariants"]["orders"]
    assert [o["order"] for o in orders] == ["drl", "grlex"]
    assert orders[0]["solving_degree"] == orders[1]["solving_degree"] == 3


def test_invariants_field_equations(capsys, tmp_path):
    path = tmp_path / "small.txt"
    path.write_text("field 3\nvars x y\npoly x*y - 1\n", encoding="utf-8")
    code, _, payload = run_json(
        capsys,
        ["invariants", str(path), "--compute", "maxgb", "--field-equations",
         "--json", "-"],
    )
    assert code == 0
    gens = payload["system"]["gens"]
    assert len(gens) == 3
    assert "x^3 - x" in gens and "y^3 - y" in gens


def test_invariants_table_window(capsys, falls_file):
    code, _, payload = run_json(
        capsys,
        ["invariants", falls_file, "--compute", "table", "--max-degree", "4",
         "--json", "-"],
    )
    assert code == 0
    assert payload["table"]["dmax"] == 4
    assert len(payload["table"]["rows"]) == 5
    out = capsys.readouterr()
    assert code == 0


def test_exit_one_on_usage_errors(capsys, tmp_path, quadrics_file):
    assert main(["invariants", str(tmp_path / "absent.txt")]) == 1
    assert "error:" in capsys.readouterr().err
    assert main(["invariants", quadrics_file, "--compute", "bogus"]) == 1
    assert "unknown --compute" in capsys.readouterr().err
    bad = tmp_path / "bad.txt"
    bad.write_text("field 6\nvars x\npoly x\n", encoding="utf-8")
    assert main(["invariants", str(bad)]) == 1
    assert "not prime" in capsys.readouterr().err
    assert main(["invariants", quadrics_file, "--order", "weird"]) == 1
    assert "unknown order token" in capsys.readouterr().err
    assert main(["invariants", quadrics_file, "--compute", "table"]) == 1
    assert "degree window" in capsys.readouterr().err


def test_exit_two_on_degree_cap(capsys, quadrics_file):
    code = main(["invariants", quadrics_file, "--compute", "maxgb,sd",
                 "--max-degree", "2"])
    captured = capsys.readouterr()
    assert code == 2
    assert "degree cap exceeded" in captured.err


def test_exit_two_on_capacity(capsys, tmp_path):
    path = tmp_path / "steep.txt"
    path.write_text("field 10007\nvars x\npoly x^61 - x\n", encoding="utf-8")
    code = main(["invariants", str(path), "--compute", "maxgb"])
    captured = capsys.readouterr()
    assert code == 2
    assert "capacity exceeded" in captured.err


def test_json_write_failure_is_usage(capsys, quadrics_file, tmp_path):
    target = tmp_path / "missing" / "report.json"
    code = main(["invariants", quadrics_file, "--compute", "maxgb",
                 "--json", str(target)])
    captured = capsys.readouterr()
    assert code == 1
    assert "cannot write" in captured.err


def test_verify_paper_runs_clean(capsys):
    code = main(["verify-paper", "--q", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "0 failures" in out
    assert "disputed claims recorded" in out


def test_verify_paper_json(capsys):
    code, _, payload = run_json(capsys, ["verify-paper", "--q", "3", "--json", "-"])
    assert code == 0
    assert payload["schema"] == 1
    assert payload["q"] == 3
    assert payload["failures"] == 0
    assert payload["checks"], "every corpus check is listed"
    keys = set(payload["checks"][0])
    assert keys == {"entry", "q", "key", "expected", "got", "ok", "disputed", "note"}


def test_parser_rejects_unknown_q():
    parser = build_parser()
    with pytest.raises(SystemExit):
        parser.parse_args(["verify-paper", "--q", "4"])
