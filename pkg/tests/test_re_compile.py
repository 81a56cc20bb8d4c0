from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from lclreduce import serialize as ser
from lclreduce.fixtures import coloring_pn, complete, k33, petersen, prism
from lclreduce.formalisms import brute_force_solve, verify, verify_re
from lclreduce.graphs import ekey, pn_view
from lclreduce.re_compile import (
    directional_subtree,
    graph_ports,
    i_fit,
    lift_d_to_e,
    lift_e_to_d,
    neighbor_by_port,
    permute_ports,
    port_of_neighbor,
    port_order,
    problem_e,
    pruned_subtree,
    t_good_failures,
)

CUBIC = [complete(4), k33(), prism(), petersen()]


def _colored(g, colors=4):
    sol = brute_force_solve(coloring_pn(colors), g)
    assert sol is not None
    return sol


def test_subtree_depths():
    g = petersen().with_labels(node_labels={v: v for v in range(10)})
    view = pn_view(g, 0, 3)
    for i in range(3):
        assert directional_subtree(view, i).radius == 2
        p = pruned_subtree(view, i)
        assert p.radius == 2 and len(p.root.children) == 2
    with pytest.raises(IndexError):
        directional_subtree(view, 3)


def test_ports_are_a_bijection():
    g = prism().with_labels(node_labels={v: v % 3 for v in range(6)})
    view = pn_view(g, 0, 2)
    order = port_order(view)
    assert sorted(order) == [0, 1, 2]
    for i in range(3):
        assert neighbor_by_port(view, port_of_neighbor(view, i)) == i
    with pytest.raises(ValueError):
        neighbor_by_port(view, 4)


def test_port_order_stable_under_relabeling():
    g = petersen().with_labels(node_labels={v: 1 + v % 3 for v in range(10)})
    h = g.relabel({v: (v * 7) % 10 for v in range(10)})
    a = pn_view(g, 4, 2)
    b = pn_view(h, (4 * 7) % 10, 2)
    assert [directional_subtree(a, i).root.digest for i in port_order(a)] == [
        directional_subtree(b, i).root.digest for i in port_order(b)
    ]


@pytest.mark.parametrize("g", CUBIC)
def test_d_to_e_to_d(g):
    src = coloring_pn(4)
    sd = _colored(g)
    pe = problem_e(src.accepts)
    hel = lift_d_to_e(g, sd, src.radius, src.accepts)
    assert verify_re(pe, g, hel)
    assert lift_e_to_d(g, hel, pe) == sd
    assert t_good_failures(g, hel, src.radius) == []


def test_fit_is_symmetric_on_lifted_labels():
    g = k33()
    sd = _colored(g, 2)
    hel = lift_d_to_e(g, sd, 2)
    for u, v in g.edges:
        a, b = hel[(u, (u, v))], hel[(v, (u, v))]
        assert i_fit(a, b) and i_fit(b, a)


def test_illegal_source_rejected():
    g = complete(4)
    src = coloring_pn(4)
    with pytest.raises(ValueError):
        lift_d_to_e(g, {v: 1 for v in g.vertices}, 1, src.accepts)
    hel = lift_d_to_e(g, {v: 1 for v in g.vertices}, 1)
    assert not verify_re(problem_e(src.accepts), g, hel)
    with pytest.raises(ValueError):
        lift_e_to_d(g, hel, problem_e(src.accepts))


def test_port_permutation_breaks_fit():
    g = petersen()
    sd = {v: v + 1 for v in g.vertices}  # injective labels: no symmetric branches
    pe = problem_e(lambda view: True)
    hel = lift_d_to_e(g, sd, 2)
    assert verify_re(pe, g, hel)
    for perm in itertools.permutations((1, 2, 3)):
        alt = permute_ports(g, hel, 0, perm)
        assert bool(verify_re(pe, g, alt)) == (perm == (1, 2, 3))


def test_graph_ports_tie_break_by_vertex_id():
    g = complete(4)
    _, ports = graph_ports(g, {v: 1 for v in g.vertices}, 2)
    for v in g.vertices:
        nb = sorted(g.neighbors(v))
        assert [ports[(v, u)] for u in nb] == [1, 2, 3]


def test_half_edge_json_round_trip():
    g = prism()
    sd = _colored(g, 3)
    hel = lift_d_to_e(g, sd, 3)
    back = ser.hel_from_json(ser.hel_to_json(hel))
    assert set(back) == set(hel)
    for k in hel:
        assert back[k][0].root.digest == hel[k][0].root.digest and back[k][1] == hel[k][1]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_lift_sound_for_random_labels(seed, r):
    rng = random.Random(seed)
    g = rng.choice(CUBIC)
    sd = {v: rng.randint(1, 3) for v in g.vertices}
    pe = problem_e(lambda view: True)
    hel = lift_d_to_e(g, sd, r)
    assert verify_re(pe, g, hel)
    assert lift_e_to_d(g, hel) == sd
    assert t_good_failures(g, hel, r) == []
