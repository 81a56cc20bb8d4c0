"""Built-in problems and small instances used by the CLI, the tests and the pipeline."""
from __future__ import annotations

import itertools
import random
from typing import Any, Dict, List, Optional

from .formalisms import BOT, LCLProblem, PNProblem, REProblem, multiset
from .graphs import CenteredGraph, LabeledGraph, RootedView, ekey

def _out(label, with_inputs: bool):
    return label[1] if with_inputs else label


def coloring_lcl(colors: int = 4, max_degree: int = 3, inputs: Optional[frozenset] = None) -> LCLProblem:
    """Proper vertex colouring; loops in multigraph balls are ignored."""
    with_inputs = inputs is not None

    def ok(cg: CenteredGraph) -> bool:
        g, c = cg.graph, cg.center
        mine = _out(g.label(c), with_inputs)
        return all(_out(g.label(u), with_inputs) != mine for u in g.neighbors(c) if u != c)

    return LCLProblem(max_degree, inputs, frozenset(range(1, colors + 1)), 1, ok, name=f"{colors}-coloring")


def coloring_pn(colors: int = 4) -> PNProblem:
    def ok(view: RootedView) -> bool:
        return all(ch.label != view.root.label for _, ch in view.root.children)

    return PNProblem(frozenset(range(1, colors + 1)), 1, ok, name=f"{colors}-coloring-pn")


def accept_all_pn(alphabet=None, radius: int = 1) -> PNProblem:
    return PNProblem(alphabet, radius, lambda view: True, name="accept-all")


def maximal_matching_lcl(max_degree: int = 3) -> LCLProblem:
    """Edge outputs in {0,1}: matched edges form a maximal matching (radius 2)."""

    def ok(cg: CenteredGraph) -> bool:
        g, c = cg.graph, cg.center

        def matched(x):
            return sum(1 for u in g.neighbors(x) if g.edge_label(ekey(x, u)) == 1)

        m = matched(c)
        if m > 1:
            return False
        if m == 1:
            return True
        # unmatched: every neighbour must be matched (its incident edges are inside a radius-2 ball)
        return all(matched(u) >= 1 for u in g.neighbors(c))

    return LCLProblem(max_degree, None, frozenset({0}), 2, ok, edge_output_alphabet=frozenset({0, 1}), name="maximal-matching")


def coloring_re(colors: int = 4) -> REProblem:
    alpha = frozenset(range(1, colors + 1))
    cv = frozenset(multiset(c, c, c) for c in alpha)
    ce = frozenset(multiset(a, b) for a in alpha for b in alpha if a != b)
    return REProblem(alpha, cv, ce, name=f"{colors}-coloring-re")


def maximal_matching_re() -> REProblem:
    alpha = frozenset({"M", "O", "P"})
    cv = frozenset({multiset("M", "O", "O"), multiset("P", "P", "P")})
    ce = frozenset({multiset("M", "M"), multiset("O", "P"), multiset("O", "O")})
    return REProblem(alpha, cv, ce, name="maximal-matching-re")


def sinkless_orientation_re() -> REProblem:
    """Half-edge O/I: every edge oriented one way, every node has an outgoing edge."""
    alpha = frozenset({"O", "I"})
    cv = frozenset({multiset("O", "O", "O"), multiset("O", "O", "I"), multiset("O", "I", "I")})
    ce = frozenset({multiset("O", "I")})
    return REProblem(alpha, cv, ce, name="sinkless-orientation-re")


def problem_by_name(name: str, **params):
    table = {
        "coloring": lambda: coloring_lcl(params.get("colors", 4), params.get("max_degree", 3),
                                         frozenset(params["inputs"]) if params.get("inputs") is not None else None),
        "coloring-pn": lambda: coloring_pn(params.get("colors", 4)),
        "coloring-re": lambda: coloring_re(params.get("colors", 4)),
        "maximal-matching": lambda: maximal_matching_lcl(params.get("max_degree", 3)),
        "maximal-matching-re": maximal_matching_re,
        "sinkless-orientation-re": sinkless_orientation_re,
        "accept-all-pn": lambda: accept_all_pn(None, params.get("radius", 1)),
    }
    if name not in table:
        raise KeyError(f"unknown built-in problem {name!r}; known: {sorted(table)}")
    return table[name]()


# ---------------------------------------------------------------- instances

def path(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges([(i, i + 1) for i in range(n - 1)], range(n))


def cycle(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges([(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(itertools.combinations(range(n), 2), range(n))


def k33() -> LabeledGraph:
    return LabeledGraph.from_edges([(a, b) for a in range(3) for b in range(3, 6)])


def prism() -> LabeledGraph:
    """Triangular prism: the 6-vertex 3-regular graph other than K(3,3)."""
    return LabeledGraph.from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def petersen() -> LabeledGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return LabeledGraph.from_edges(outer + inner + spokes)


def random_labeled_graph(rng: random.Random, max_n: int = 6, max_degree: int = 3, labels=(0, 1, 2), min_degree: int = 1) -> LabeledGraph:
    """Random simple graph with every degree in [min_degree, max_degree] and random node labels."""
    while True:
        n = rng.randint(2, max_n)
        pairs = list(itertools.combinations(range(n), 2))
        rng.shuffle(pairs)
        deg = [0] * n
        edges = []
        for u, v in pairs:
            if deg[u] < max_degree and deg[v] < max_degree and rng.random() < 0.6:
                edges.append((u, v))
                deg[u] += 1
                deg[v] += 1
        if min(deg) >= min_degree:
            return LabeledGraph(range(n), edges, {v: rng.choice(labels) for v in range(n)})


def instance_by_name(name: str) -> LabeledGraph:
    table = {
        "k2": lambda: complete(2),
        "k4": lambda: complete(4),
        "k33": k33,
        "prism": prism,
        "petersen": petersen,
        "c5": lambda: cycle(5),
        "c6": lambda: cycle(6),
        "p3": lambda: path(3),
    }
    if name not in table:
        raise KeyError(f"unknown instance {name!r}; known: {sorted(table)}")
    return table[name]()
