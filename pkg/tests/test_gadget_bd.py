from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from lclreduce.fixtures import coloring_lcl, complete, k33, petersen, prism, random_labeled_graph
from lclreduce.formalisms import verify
from lclreduce.gadget_bd import (
    A_EDGES,
    InsufficientDepth,
    a_gadget,
    brute_force_theorem,
    check_coloring_theorem,
    classify_vertices,
    contract_db,
    d_constants,
    default_chi,
    distance_edge_coloring,
    enumerate_cubic_radius,
    expand_edges,
    gadget_bd,
    gadget_ball_structure,
    is_correctly_gadgeted_ball,
    is_distance_edge_coloring,
    lift_b_to_d,
    lift_d_to_b,
    max_edges_radius,
    nt_restricted_view,
    problem_d,
    reconstruct_r1,
    reconstruct_r2,
    reconstructible,
    theorem_conclusion,
    theorem_hypotheses,
    theta_gadgeting,
    twisted_twin_chains,
)
from lclreduce.graphs import CenteredGraph, LabeledGraph, gball, gdist, graph_iso, pn_view, pn_view_all


def test_a_gadget_shape():
    g = a_gadget().graph()
    assert g.n == 6 and g.m == len(A_EDGES) == 8
    assert {v for v in g.vertices if g.degree(v) == 2} == set(a_gadget().stubs)
    assert all(g.degree(v) == 3 for v in g.vertices if v not in a_gadget().stubs)


def test_single_expanded_edge_of_length_five():
    gg = expand_edges([0, 1], [(0, 1, 5)])
    assert gg.graph.n == 32
    assert sorted(gg.classes.values()).count("original") == 2
    assert sum(1 for c in gg.classes.values() if c == "outer") == 2
    assert gdist(gg.graph, 0, 1) == 1


def test_k4_gadgeting():
    g = complete(4)
    gg = gadget_bd(g)
    x = gg.coloring
    assert is_distance_edge_coloring(g, x, 2)
    assert gg.graph.n == 4 + 6 * sum(x.values())
    assert gg.graph.is_regular(3)
    assert len(gg.original_set) == 4
    for u in range(4):
        for v in range(u + 1, 4):
            assert gdist(gg.graph, gg.originals[u], gg.originals[v]) == 1


def test_explicit_coloring_validated():
    g = complete(4)
    with pytest.raises(ValueError):
        gadget_bd(g, {e: 1 for e in g.edges})
    with pytest.raises(ValueError):
        gadget_bd(LabeledGraph.from_edges([(0, 1)]))


@pytest.mark.parametrize("base", [complete(4), k33(), prism(), petersen()])
def test_contract_recovers_base_and_coloring(base):
    gg = gadget_bd(base)
    c = contract_db(gg.graph)
    assert graph_iso(c.graph.with_labels(edge_labels=c.coloring), base.with_labels(edge_labels=gg.coloring))
    nt = {v for v, s in classify_vertices(gg.graph).items() if s == "non-triangle"}
    assert nt == gg.original_set


def test_contract_undoes_parallel_chains():
    th = theta_gadgeting()
    c = contract_db(th.graph)
    assert len(c.reversed) == 3
    assert c.graph.n == th.graph.n


def test_gball_structure_recognition():
    gg = gadget_bd(complete(4))
    for o in gg.original_set:
        for r in (1, 2):
            assert is_correctly_gadgeted_ball(gball(gg.graph, o, r))
    assert not is_correctly_gadgeted_ball(CenteredGraph(complete(4), 0, 1))
    inner = next(v for v, c in gg.classes.items() if c == "inner")
    assert gadget_ball_structure(gball(gg.graph, inner, 1)) is None


def test_constants():
    dc = d_constants(1)
    assert (dc.k, dc.r_d) == (7, 30)
    assert dc.r_d == (4 * dc.k + 1) * dc.r_b + 1
    assert dc.zeta == 3 * 2 ** 30 - 1
    assert isinstance(d_constants(39).zeta, str)
    assert len(enumerate_cubic_radius(1)) == 1
    assert max_edges_radius(1) == 6


def _lifted(base, colors):
    gg = gadget_bd(base)
    dc = d_constants(1)
    chi = default_chi(gg, dc.r_d)
    return gg, dc, chi, lift_b_to_d(colors, chi, gg, dc.r_d)


def test_d_membership_on_sampled_vertices():
    gg, dc, chi, sd = _lifted(complete(4), {0: 1, 1: 2, 2: 3, 3: 4})
    pd = problem_d(coloring_lcl(4), dc)
    views = pn_view_all(gg.graph.with_labels(node_labels=sd), dc.r_d)
    sample = sorted(gg.original_set) + sorted(v for v in gg.graph.vertices if v not in gg.original_set)[::40]
    assert all(pd.accepts(views[v]) for v in sample)
    assert lift_d_to_b(sd, gg) == {0: 1, 1: 2, 2: 3, 3: 4}
    # an improper B colouring is caught at the originals
    _, _, _, bad = _lifted(complete(4), {0: 1, 1: 1, 2: 3, 3: 4})
    bviews = pn_view_all(gg.graph.with_labels(node_labels=bad), dc.r_d)
    assert not pd.accepts(bviews[gg.originals[0]])
    # a colouring that is not distance-2r_D proper is rejected
    flat = {v: (1, b) for v, (_, b) in sd.items()}
    fview = pn_view(gg.graph.with_labels(node_labels=flat), gg.originals[0], dc.r_d)
    assert not reconstructible(fview)
    assert not pd.accepts(fview)


def test_reconstruction_of_local_structure():
    gg, dc, chi, sd = _lifted(complete(4), {0: 1, 1: 2, 2: 3, 3: 4})
    view = pn_view(gg.graph.with_labels(node_labels=sd), gg.originals[0], dc.r_d)
    tv = nt_restricted_view(view, 1)
    r1 = reconstruct_r1(tv)
    assert (r1.n, r1.m) == (40, 57)
    r2, _ = reconstruct_r2(tv)
    assert (r2.graph.n, r2.graph.m) == (4, 3)
    with pytest.raises(InsufficientDepth):
        nt_restricted_view(pn_view(gg.graph.with_labels(node_labels=sd), 0, 1), 1)


def test_malformed_d_labels_rejected():
    gg, dc, _, sd = _lifted(complete(4), {0: 1, 1: 2, 2: 3, 3: 4})
    pd = problem_d(coloring_lcl(4), dc)
    junk = dict(sd)
    junk[gg.originals[0]] = "junk"
    assert not pd.accepts(pn_view(gg.graph.with_labels(node_labels=junk), gg.originals[0], dc.r_d))


def test_theorem_fixtures():
    th = theta_gadgeting()
    assert th.graph.n == 38
    assert check_coloring_theorem(th.graph, th.original_set, 1).status == "exhausted-ok"
    lift, chi = twisted_twin_chains()
    res = check_coloring_theorem(lift.graph, lift.original_set, 1)
    assert res.status == "counterexample"
    assert theorem_hypotheses(lift.graph, res.counterexample, 1)
    assert theorem_conclusion(lift.graph, res.counterexample, lift.original_set, 1) is not None
    # the projection colouring is itself a counterexample
    assert theorem_hypotheses(lift.graph, chi, 1)
    assert theorem_conclusion(lift.graph, chi, lift.original_set, 1) is not None


def test_theorem_budget():
    th = theta_gadgeting()
    assert check_coloring_theorem(th.graph, th.original_set, 1, budget=10).status == "budget-exceeded"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2))
def test_theorem_checker_matches_exhaustive_oracle(seed, r):
    rng = random.Random(seed)
    g = random_labeled_graph(rng, max_n=8, labels=(0,))
    orig = set(rng.sample(g.sorted_vertices(), min(g.n, rng.randint(1, 3))))
    g = g.with_labels(edge_weights={e: 1 if (e[0] in orig or e[1] in orig) else 0 for e in g.edges})
    fast = check_coloring_theorem(g, orig, r)
    slow = brute_force_theorem(g, orig, r)
    assert (fast.status == "counterexample") == (slow is not None)
    if fast.counterexample is not None:
        assert theorem_hypotheses(g, fast.counterexample, r)
        assert theorem_conclusion(g, fast.counterexample, orig, r) is not None


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_distance_edge_coloring_property(seed):
    base = random.Random(seed).choice([complete(4), k33(), prism(), petersen()])
    x = distance_edge_coloring(base, 2)
    assert is_distance_edge_coloring(base, x, 2)
    gg = gadget_bd(base, x)
    assert gg.graph.is_regular(3)
