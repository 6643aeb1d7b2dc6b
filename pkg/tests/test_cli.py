import json

import pytest

from pqverify.cli import EXIT_INPUT, EXIT_INVARIANT, EXIT_OK, EXIT_OPEN, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_validate(capsys):
    code, out = run(capsys, "validate", "--table", "A5")
    assert code == EXIT_OK and json.loads(out)["ok"]


def test_validate_missing_file(capsys):
    code, _ = run(capsys, "validate", "--table", "/nonexistent/table.json")
    assert code == EXIT_INPUT


def test_validate_bad_table(tmp_path, capsys):
    from pqverify.chartables import load_fixture, table_to_dict

    d = table_to_dict(load_fixture("A5"))
    d["classes"][1]["size"] = 14
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    code, _ = run(capsys, "validate", "--table", str(path))
    assert code == EXIT_INPUT


def test_prime_graph_from_table_and_group(capsys):
    code, out = run(capsys, "prime-graph", "--table", "S5")
    assert code == EXIT_OK and json.loads(out) == {"vertices": [2, 3, 5], "edges": [[2, 3]]}
    code, out2 = run(capsys, "prime-graph", "--group", "S5")
    assert code == EXIT_OK and out2 == out


def test_help_command(capsys):
    code, out = run(capsys, "help", "--table", "A5", "--order", "6")
    assert code == EXIT_OK and json.loads(out)["distinct_unit_vectors"] == []
    code, out = run(capsys, "help", "--table", "A5", "--order", "5")
    assert code == EXIT_OPEN
    assert sorted(map(tuple, json.loads(out)["distinct_unit_vectors"])) == [(0, 1), (1, 0)]
    code, _ = run(capsys, "help", "--table", "A5", "--order", "7")
    assert code == EXIT_INPUT


def test_help_with_brauer_and_wagner(capsys):
    code, out = run(capsys, "help", "--table", "A6", "--order", "6", "--brauer", "A6.mod5", "--wagner")
    assert code == EXIT_OPEN and json.loads(out)["distinct_unit_vectors"]


def test_pq_constant_check(capsys):
    code, out = run(capsys, "pq-constant", "--table", "U3_3", "--p", "3", "--q", "7", "--max-terms", "1", "--check")
    data = json.loads(out)
    assert code == EXIT_OK
    assert any(c["infeasible"] for c in data["characters"])
    code, _ = run(capsys, "pq-constant", "--table", "U3_3", "--p", "3", "--q", "3")
    assert code == EXIT_INPUT


def test_sweep(capsys):
    code, out = run(capsys, "sweep", "--table", "A5", "--order", "6")
    assert code == EXIT_OK and json.loads(out)["eliminated"]
    code, _ = run(capsys, "sweep", "--table", "A6", "--order", "6")
    assert code == EXIT_OPEN


def test_verify_pq(tmp_path, capsys):
    out_path = tmp_path / "a5.json"
    code, out = run(capsys, "verify-pq", "--table", "A5", "--out", str(out_path))
    assert code == EXIT_OK and "| A5 |" in out
    assert json.loads(out_path.read_text())["final"] == "verified"
    code, out = run(capsys, "verify-pq", "--table", "A5", "--format", "json")
    assert out == out_path.read_text()


def test_verify_pq_undecided_with_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"use_external_facts": False}))
    code, _ = run(capsys, "verify-pq", "--table", "A6", "--config", str(cfg))
    assert code == EXIT_OPEN
    cfg.write_text(json.dumps({"nonsense": 1}))
    code, _ = run(capsys, "verify-pq", "--table", "A6", "--config", str(cfg))
    assert code == EXIT_INPUT


def test_reduce(tmp_path, capsys):
    facts = tmp_path / "facts.json"
    facts.write_text(json.dumps([
        {"kind": "pq_verified", "group": "A5"},
        {"kind": "almost_simple_images", "group": "G", "images": ["A5"]},
    ]))
    code, out = run(capsys, "reduce", "--facts", str(facts))
    assert code == EXIT_OK and [d["group"] for d in json.loads(out)] == ["G"]
    facts.write_text(json.dumps([{"kind": "bogus", "group": "G"}]))
    assert run(capsys, "reduce", "--facts", str(facts))[0] == EXIT_INPUT
    facts.write_text("not json")
    assert run(capsys, "reduce", "--facts", str(facts))[0] == EXIT_INPUT


def test_cross_check(capsys):
    code, out = run(capsys, "cross-check", "--table", "A5", "--group", "A5")
    assert code == EXIT_OK and json.loads(out)["consistent"]
    code, _ = run(capsys, "cross-check", "--table", "S5", "--group", "A5")
    assert code == EXIT_INVARIANT


def test_unknown_command_exits_via_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
