from __future__ import annotations

import json

import pytest

from lclreduce import serialize as ser
from lclreduce.encode_ab import decode_ab, encode_ab
from lclreduce.fixtures import complete, path, petersen
from lclreduce.formalisms import LCLProblem, PNProblem, REProblem, enumerate_solutions, verify
from lclreduce.gadget_bd import expand_edges
from lclreduce.graphs import LabeledGraph


def test_graph_json_round_trip():
    g = path(4).with_labels(node_labels={0: 1, 1: (2, "x"), 2: 0, 3: 5}, edge_labels={(0, 1): 7})
    d = json.loads(ser.dump_json(ser.graph_to_json(g)))
    assert ser.graph_from_json(d) == g


def test_empty_graph_documents():
    g = LabeledGraph([], [])
    assert ser.graph_from_json(ser.graph_to_json(g)).n == 0
    assert ser.to_dot(g) == "graph G {\n}\n"


def test_graph_json_errors():
    with pytest.raises(ValueError):
        ser.graph_from_json({"vertices": [0]})
    with pytest.raises(ValueError):
        ser.graph_from_json({"edges": [[0, 1]], "edge_weights": {"0-1": 2}})
    with pytest.raises(ValueError):
        ser.graph_from_json({"edges": [[0, 1, 2]]})


def test_edge_strings_accepted():
    g = ser.graph_from_json({"edges": ["0-1", "1-2"]})
    assert g.sorted_edges() == [(0, 1), (1, 2)]


def test_decode_map_schema():
    g = path(2).with_labels(node_labels={0: 1, 1: 2})
    gp, dm = encode_ab(g)
    d = dm.to_json()
    assert {"nodes", "edges", "malformed_vertices"} <= set(d)
    assert sorted(int(k) for k in d["nodes"]) == [0, 1]
    assert list(d["edges"]) == ["0-1"]
    _, dm2 = decode_ab(petersen())
    assert len(dm2.to_json()["malformed_vertices"]) == 10


def test_dot_styles_fig_fixture():
    gg = expand_edges([0, 1], [(0, 1, 5)])
    dot = ser.to_dot(gg.graph, gg.classes)
    assert dot.count("label=") == 32
    assert dot.count("fillcolor=black") == 2
    assert dot.count("fillcolor=pink") == 2
    assert dot.count("style=bold") == 2


def test_problem_json_builtin_and_explicit():
    p = ser.problem_from_json({"formalism": "lcl", "builtin": "coloring", "params": {"colors": 3}})
    assert isinstance(p, LCLProblem) and p.output_alphabet == frozenset({1, 2, 3})
    re = ser.problem_from_json({
        "formalism": "re", "alphabet": ["M", "O", "P"],
        "node_constraint": [["M", "O", "O"], ["P", "P", "P"]],
        "edge_constraint": [["M", "M"], ["O", "P"], ["O", "O"]],
    })
    assert isinstance(re, REProblem)
    assert len(list(enumerate_solutions(re, complete(4)))) == 3
    # explicit PN problem: 2-colouring of a cycle, views of radius 1
    pn = ser.problem_from_json({
        "formalism": "pn", "radius": 1, "output_alphabet": [1, 2],
        "accepted": [[1, [[2, []], [2, []]]], [2, [[1, []], [1, []]]]],
    })
    assert isinstance(pn, PNProblem)
    from lclreduce.fixtures import cycle
    assert verify(pn, cycle(4), {0: 1, 1: 2, 2: 1, 3: 2})
    assert not verify(pn, cycle(4), {0: 1, 1: 1, 2: 2, 3: 2})
    # explicit LCL: proper 2-colouring of a path of length 1
    lcl = ser.problem_from_json({
        "formalism": "lcl", "radius": 1, "max_degree": 1, "output_alphabet": [1, 2],
        "accepted": [
            {"graph": {"edges": [[0, 1]], "node_labels": {"0": 1, "1": 2}}, "center": 0},
            {"graph": {"edges": [[0, 1]], "node_labels": {"0": 2, "1": 1}}, "center": 0},
        ],
    })
    assert verify(lcl, path(2), {0: 1, 1: 2})
    assert not verify(lcl, path(2), {0: 1, 1: 1})
    with pytest.raises(ValueError):
        ser.problem_from_json({"formalism": "tm"})
    with pytest.raises(ValueError):
        ser.problem_from_json({"alphabet": []})
