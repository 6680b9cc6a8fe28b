import json
import subprocess
import sys

import pytest

from varmax import cli
from varmax.reporting import CSV_COLUMNS, RunRecord, atomic_write, read_csv, render_csv


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constant_exact(capsys, tmp_path):
    js = tmp_path / "c.json"
    code, out, _ = run(capsys, "constant", "--graph", "P4", "--exact", "--threads", "1", "--json", str(js))
    assert code == 0
    assert "C = 3/4 (exact)" in out
    doc = json.loads(js.read_text())
    assert doc["certificate"]["value"] == "3/4"
    assert doc["run"]["command"] == "constant" and doc["run"]["finished"]


def test_constant_numeric_default_for_non_unit_p(capsys):
    code, out, _ = run(capsys, "constant", "--graph", "K3", "--p", "2", "--restarts", "4")
    assert code == 0
    assert "numeric-lower-bound" in out and "2/3" in out


def test_usage_errors(capsys):
    assert run(capsys, "constant", "--graph", "K3", "--exact", "--numeric")[0] == 2
    assert run(capsys, "constant", "--graph", "K3", "--exact", "--p", "2")[0] == 2
    assert run(capsys, "constant", "--graph", "Q9")[0] == 2
    assert run(capsys, "constant", "--graph", "K3", "--p", "-1")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2
    assert run(capsys, "graph6", "--decode", "C~~")[0] == 2


def test_computational_failure_exit_code(capsys):
    code, _, err = run(capsys, "construction-search", "--p", "2", "--target", "1e9")
    assert code == 1 and "budget" in err


def test_parse_p():
    from fractions import Fraction
    assert cli.parse_p("1") == Fraction(1)
    assert cli.parse_p("3/2") == Fraction(3, 2)
    assert cli.parse_p("0.77") == 0.77


def test_survey_csv(capsys, tmp_path):
    out = tmp_path / "s.csv"
    code, text, _ = run(capsys, "survey", "--n", "4", "--p", "1", "--exact", "--threads", "1", "--out", str(out))
    assert code == 0
    assert "3/4 x6" in text
    record, rows = read_csv(out)
    assert record["command"] == "survey"
    assert list(rows[0]) == CSV_COLUMNS
    assert {r["value"] for r in rows} == {"3/4"}
    assert all(r["mode"] == "exact" for r in rows)


def test_paths_json(capsys, tmp_path):
    js = tmp_path / "p.json"
    code, _, _ = run(capsys, "paths", "--max-n", "4", "--exact", "--threads", "1", "--json", str(js))
    assert code == 0
    doc = json.loads(js.read_text())
    assert [c["value"] for c in doc["certificates"]] == ["2/3", "3/4"]
    assert doc["errors"] == {}


def test_construction_and_graph6_emit(capsys, tmp_path):
    g6 = tmp_path / "t.g6"
    code, out, err = run(capsys, "construction", "--k", "2", "--m", "1", "--emit-graph6", str(g6))
    assert code == 0
    assert json.loads(out)["vertices"] == 16
    assert "m=1" in err
    code, out, _ = run(capsys, "graph6", "--decode", g6.read_text().strip())
    assert json.loads(out)["n"] == 16


def test_enumerate_and_graph6(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4")
    assert code == 0 and len(out.split()) == 6
    assert run(capsys, "graph6", "--graph", "K4")[1].strip() == "C~"


def test_maximal(capsys):
    code, out, _ = run(capsys, "maximal", "--graph", "C4", "--f", "1/2,0,0,0")
    assert json.loads(out) == {"mvalues": ["1/2", "1/6", "1/8", "1/6"], "argmax_radius": [0, 1, 2, 1]}
    assert run(capsys, "maximal", "--graph", "C4", "--f", "1,0")[0] == 1


def test_verify_inequalities_report(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify-inequalities", "--sweep-size", "5000", "--trials", "500", "--report", str(rep))
    assert code == 0
    assert json.loads(rep.read_text())["report"]["ok"] is True


def test_config_file_sets_defaults(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": "2", "restarts": 3, "seed": 7}))
    code, out, _ = run(capsys, "--config", str(cfg), "constant", "--graph", "K3")
    assert code == 0 and "numeric" in out
    assert run(capsys, "--config", str(tmp_path / "missing.json"), "enumerate", "--n", "2")[0] == 2


def test_atomic_write_keeps_old_file_on_failure(tmp_path):
    target = tmp_path / "x.txt"
    target.write_text("old")

    # a non-string payload fails mid-write
    with pytest.raises(TypeError):
        atomic_write(target, 123)
    assert target.read_text() == "old"
    assert [p.name for p in tmp_path.iterdir()] == ["x.txt"]
    atomic_write(target, "new")
    assert target.read_text() == "new"


def test_render_csv_header():
    text = render_csv([], RunRecord.start("t", argv=["a"], seed=1))
    first, second = text.splitlines()
    assert first.startswith("# run: ") and json.loads(first[7:])["seed"] == 1
    assert second.split(",") == CSV_COLUMNS


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "varmax", "graph6", "--graph", "P4"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "Ch"
