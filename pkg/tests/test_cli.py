import json
from pathlib import Path

import jsonschema
import pytest

from verbalrank.cli import main

SCHEMA = json.loads((Path(__file__).parents[1] / "src/verbalrank/schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_word_info(capsys, tmp_path):
    code, out = run(capsys, "word", "info", "[x1,x2,x3,x4]", "--json", str(tmp_path / "w.json"))
    assert code == 0
    assert "height: 3" in out.out and "defect: 8" in out.out
    doc = json.loads((tmp_path / "w.json").read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["result"]["defect"] == 8


def test_word_dot(capsys, tmp_path):
    code, out = run(capsys, "word", "dot", "gamma3")
    assert code == 0 and out.out.startswith('digraph "word"')
    run(capsys, "word", "dot", "gamma3", "--dot", str(tmp_path / "g.dot"))
    assert (tmp_path / "g.dot").read_text() == out.out


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    code, out = run(capsys, "word", "info", "[x1,x1]")
    assert code == 2 and "duplicate" in out.err
    assert run(capsys, "group", "info", "--group", "Z99")[0] == 2
    assert run(capsys, "check", "focal", "--group", "S4", "--bogus")[0] == 2
    assert run(capsys, "counterexample", "frobenius", "--p", "2", "--m", "1")[0] == 2


def test_check_focal(capsys, tmp_path):
    out_json = tmp_path / "f.json"
    code, out = run(capsys, "check", "focal", "--group", "S4", "--word", "[x1,x2]", "--prime", "2",
                    "--json", str(out_json))
    assert code == 0 and "[PASS] focal" in out.out
    jsonschema.validate(json.loads(out_json.read_text()), SCHEMA)


@pytest.mark.parametrize("argv", [
    ["check", "goodgen", "--group", "SL(2,3)", "--word", "gamma3"],
    ["check", "rank", "--group", "S4"],
    ["check", "rank", "--group", "S4", "--mode", "metanilpotent"],
    ["check", "fitting", "--group", "S4"],
    ["check", "section", "--group", "D8", "--word", "gamma3", "--eta", "delta1"],
    ["check", "section", "--group", "S4", "--section", "L,R"],
    ["check", "abelian-wi", "--group", "S4"],
    ["check", "pset", "--group", "S4", "--normal", "fitting"],
    ["check", "lemma-t", "--group", "S4", "--A", "(1 2)", "--B", "(1 2 3)"],
    ["check", "supplement", "--group", "S4", "--normal", "(1 2)(3 4);(1 3)(2 4)"],
    ["check", "centralizer", "--group", "S4xC2", "--normal", "center"],
    ["counterexample", "frobenius", "--p", "3", "--m", "2"],
    ["group", "info", "--group", "A5xS4"],
    ["verbal", "compute", "--group", "S4", "--word", "gamma2", "--dump", "--prime", "2"],
    ["verbal", "compute", "--group", "S5", "--word", "gamma3", "--mode", "sampled", "--draws", "50"],
])
def test_commands_succeed_and_validate(capsys, tmp_path, argv):
    path = tmp_path / "out.json"
    code, _ = run(capsys, *argv, "--json", str(path))
    assert code == 0
    jsonschema.validate(json.loads(path.read_text()), SCHEMA)


def test_bad_section_is_usage_error(capsys):
    assert run(capsys, "check", "section", "--group", "S4", "--section", "L")[0] == 2


def test_fail_exit_status(capsys, monkeypatch, tmp_path):
    from verbalrank import checks
    from verbalrank.subgroups import trivial

    monkeypatch.setattr(checks, "verbal_subgroup", lambda G, w: (trivial(G), True))
    path = tmp_path / "x.json"
    code, out = run(capsys, "check", "goodgen", "--group", "S4", "--json", str(path))
    assert code == 1 and "[FAIL]" in out.out
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["exit_status"] == 1 and doc["reports"][0]["witness"]


def test_corpus_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "corpus", "run", "--profile", "smoke", "--json", str(a))[0] == 0
    assert run(capsys, "corpus", "run", "--profile", "smoke", "--json", str(b), "--workers", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["summary"]["fail"] == 0


def test_timings_flag(capsys, tmp_path):
    path = tmp_path / "t.json"
    run(capsys, "check", "fitting", "--group", "S4", "--json", str(path), "--timings")
    doc = json.loads(path.read_text())
    assert doc["reports"][0]["millis"] is not None
    jsonschema.validate(doc, SCHEMA)


def test_catalog_listing(capsys):
    code, out = run(capsys, "catalog")
    assert code == 0 and "SL(2,3)" in out.out
