from __future__ import annotations

from typing import List, Tuple

from lclreduce.formalisms import multiset
from lclreduce.graphs import LabeledGraph, MultiGraph

ACCEPTANCE: List[Tuple[int, bool, str]] = []


def expected_decoding(g: LabeledGraph) -> MultiGraph:
    """What decoding an encoded graph must give back: edges carry their endpoint labels."""
    el = {e: multiset(g.label(e[0]), g.label(e[1])) for e in g.edges}
    return MultiGraph.from_simple(g.with_labels(edge_labels=el))


def relabel_randomly(g: LabeledGraph, rng) -> LabeledGraph:
    vs = g.sorted_vertices()
    shuffled = vs[:]
    rng.shuffle(shuffled)
    return g.relabel(dict(zip(vs, shuffled)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
