from __future__ import annotations

import json

import pytest

from lclreduce import serialize as ser
from lclreduce.cli import main
from lclreduce.fixtures import complete
from lclreduce.pipeline import PipelineConfig


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constants(capsys):
    code, out, _ = run(capsys, "constants")
    d = json.loads(out)
    assert code == 0 and d["lam"] == 39 and d["r_b"] == 39


def test_solve_then_verify(tmp_path, capsys):
    sol = tmp_path / "sol.json"
    assert run(capsys, "solve", "--problem", "coloring", "--instance", "fixture:k4", "--out", str(sol))[0] == 0
    code, out, _ = run(capsys, "verify", "--problem", "coloring", "--instance", "fixture:k4", "--output", str(sol))
    assert code == 0 and json.loads(out)["overall"] is True
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"0": 1, "1": 1, "2": 2, "3": 3}))
    code, out, _ = run(capsys, "verify", "--problem", "coloring", "--instance", "fixture:k4", "--output", str(bad))
    assert code == 1 and json.loads(out)["failures"] == [["0", "constraint-rejection"], ["1", "constraint-rejection"]]


def test_unsolvable(capsys):
    assert run(capsys, "solve", "--problem", "coloring", "--colors", "3", "--instance", "fixture:k4")[0] == 1


def test_problem_file(tmp_path, capsys):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"formalism": "re", "builtin": "maximal-matching-re"}))
    sol = tmp_path / "s.json"
    assert run(capsys, "solve", "--problem", str(p), "--instance", "fixture:k4", "--out", str(sol))[0] == 0
    assert run(capsys, "verify", "--problem", str(p), "--instance", "fixture:k4", "--output", str(sol))[0] == 0


def test_input_errors(tmp_path, capsys):
    corrupt = tmp_path / "g.json"
    corrupt.write_text('{"edges": [[0, 1')
    assert run(capsys, "encode-ab", "--instance", str(corrupt))[0] == 2
    assert run(capsys, "encode-ab", "--instance", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "verify", "--problem", "nope", "--instance", "fixture:k4", "--output", str(corrupt))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["export", "--instance", "fixture:k4", "--format", "png"])
    assert exc.value.code == 2


def test_encode_decode_lift(tmp_path, capsys):
    g = tmp_path / "g.json"
    ser.dump_json(ser.graph_to_json(complete(4).with_labels(node_labels={0: 0, 1: 1, 2: 2, 3: 0})), str(g))
    enc = tmp_path / "enc.json"
    assert run(capsys, "encode-ab", "--instance", str(g), "--out", str(enc))[0] == 0
    code, out, _ = run(capsys, "decode-ab", "--instance", str(enc))
    d = json.loads(out)
    assert code == 0 and len(d["decoded"]["vertices"]) == 4 and d["decode_map"]["malformed_vertices"] == []
    sa = tmp_path / "sa.json"
    sa.write_text(json.dumps({"0": 1, "1": 2, "2": 3, "3": 4}))
    sb = tmp_path / "sb.json"
    assert run(capsys, "lift-ab", "--instance", str(g), "--labeling", str(sa), "--direction", "a2b", "--out", str(sb))[0] == 0
    code, out, _ = run(capsys, "lift-ab", "--instance", str(g), "--labeling", str(sb), "--direction", "b2a")
    assert json.loads(out) == {"0": 1, "1": 2, "2": 3, "3": 4}


def test_gadget_contract_export(tmp_path, capsys):
    gg = tmp_path / "gg.json"
    assert run(capsys, "gadget-bd", "--instance", "fixture:k4", "--out", str(gg))[0] == 0
    doc = json.loads(gg.read_text())
    assert len(doc["graph"]["vertices"]) == 130
    code, out, _ = run(capsys, "contract-db", "--instance", str(gg))
    assert code == 0 and json.loads(out)["coloring"] == doc["coloring"]
    code, out, _ = run(capsys, "export", "--instance", str(gg), "--format", "dot")
    assert code == 0 and out.count("fillcolor=black") == 4
    code, out, _ = run(capsys, "export", "--instance", "fixture:fig1b", "--format", "dot")
    assert out.count("label=") == 32
    code, out, _ = run(capsys, "export", "--instance", "fixture:petersen", "--format", "json")
    assert ser.graph_from_json(json.loads(out)).n == 10


def test_check_theorem(capsys):
    code, out, _ = run(capsys, "check-theorem", "--fixture", "theta")
    assert code == 0 and json.loads(out)["status"] == "exhausted-ok"
    code, out, _ = run(capsys, "check-theorem", "--fixture", "twisted")
    assert code == 1 and json.loads(out)["status"] == "counterexample"
    code, _, _ = run(capsys, "check-theorem", "--fixture", "theta", "--max-vertices", "10")
    assert code == 3
    code, _, _ = run(capsys, "check-theorem", "--fixture", "theta", "--budget", "5")
    assert code == 3


def test_compile_and_lift_de(tmp_path, capsys):
    code, out, _ = run(capsys, "compile-re", "--problem", "coloring")
    assert code == 0 and json.loads(out)["r_D"] == 30
    g = tmp_path / "k33.json"
    ser.dump_json(ser.graph_to_json(__import__("lclreduce.fixtures", fromlist=["k33"]).k33()), str(g))
    sd = tmp_path / "sd.json"
    sd.write_text(json.dumps({str(v): [1, v] for v in range(6)}))
    hel = tmp_path / "hel.json"
    assert run(capsys, "lift-de", "--problem", "coloring", "--instance", str(g), "--labeling", str(sd), "--out", str(hel))[0] == 0
    code, out, _ = run(capsys, "lift-ed", "--instance", str(g), "--labeling", str(hel))
    assert code == 0 and json.loads(out) == json.loads(sd.read_text())


def test_simulate(capsys):
    code, out, _ = run(capsys, "simulate", "--mode", "slocal", "--alg", "builtin:greedy-color", "--instance", "fixture:p3", "--order", "1,0,2")
    assert code == 0 and json.loads(out)["outputs"] == {"0": 2, "1": 1, "2": 2}
    code, out, _ = run(capsys, "simulate", "--mode", "a2", "--alg", "builtin:max-id", "--instance", "fixture:c5")
    assert set(json.loads(out)["ledger"].values()) == {1}
    assert run(capsys, "simulate", "--mode", "local", "--alg", "builtin:nope", "--instance", "fixture:c5")[0] == 2


def test_pipeline_reports_are_reproducible(capsys, monkeypatch):
    args = ["pipeline", "--problem", "coloring", "--colors", "3", "--instance", "fixture:p3", "--stages", "A-B"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0 and out1 == out2
    assert json.loads(out1)["verdict"] == "pass"


def test_pipeline_budget_and_stale_config(tmp_path, capsys, monkeypatch):
    code, out, _ = run(capsys, "pipeline", "--problem", "coloring", "--colors", "3", "--instance", "fixture:p3", "--stages", "A-E")
    assert code == 3 and json.loads(out)["verdict"] == "budget-exceeded"
    stale = tmp_path / "cfg.json"
    d = PipelineConfig.derive().to_json()
    d["r_d"] = 31
    stale.write_text(json.dumps(d))
    assert run(capsys, "pipeline", "--problem", "coloring", "--instance", "fixture:p3", "--config", str(stale))[0] == 2
    monkeypatch.setenv("LCLREDUCE_BUDGET", "3")
    code, out, _ = run(capsys, "pipeline", "--problem", "coloring", "--colors", "3", "--instance", "fixture:p3", "--stages", "A-B")
    assert code == 3
    monkeypatch.setenv("LCLREDUCE_BUDGET", "many")
    assert run(capsys, "pipeline", "--problem", "coloring", "--instance", "fixture:p3")[0] == 2
