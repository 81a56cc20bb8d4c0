from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lclreduce.encode_ab import decode_ab, encode_ab, framework_constants
from lclreduce.fixtures import complete, cycle, path, random_labeled_graph
from lclreduce.local_sim import (
    BUILTINS,
    DIAMOND,
    LocalAlgorithm,
    Outcome,
    SimInstance,
    builtin,
    distance_k_coloring,
    global_a1,
    global_a2,
    induced_decoded_order,
    lift_outcome,
    run_local,
    run_slocal,
    simulate_a1_prime,
    simulate_a2_prime,
)

LAM = framework_constants(2).lam


def test_instance_validation():
    g = path(3)
    with pytest.raises(ValueError):
        SimInstance(g, {0: 0, 1: 0, 2: 1})
    with pytest.raises(ValueError):
        SimInstance(g, {0: 0, 1: 1})
    with pytest.raises(ValueError):
        SimInstance(g, {0: 0, 1: 1, 2: 10**6})


def test_local_round_budget_enforced():
    with pytest.raises(ValueError):
        run_local(builtin("max-id"), SimInstance.default(path(3), T=0))


def test_local_max_id():
    res = run_local(builtin("builtin:max-id"), SimInstance.default(path(4), T=1))
    assert res.outputs == {0: 1, 1: 2, 2: 3, 3: 3}
    assert set(res.ledger.values()) == {1}


def test_slocal_depends_on_order():
    inst = SimInstance.default(path(3), T=1)
    a = run_slocal(builtin("greedy-color"), inst, [0, 1, 2]).outputs
    b = run_slocal(builtin("greedy-color"), inst, [1, 0, 2]).outputs
    assert a == {0: 1, 1: 2, 2: 1} and b == {0: 2, 1: 1, 2: 2}
    with pytest.raises(ValueError):
        run_slocal(builtin("greedy-color"), inst, [0, 1])


def test_distance_coloring_oracle():
    oracle = distance_k_coloring(SimInstance.default(cycle(6)), 2)
    assert oracle.colors == 3


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin("nope")


def test_diamond_table_is_metadata():
    assert DIAMOND["det-LOCAL"] == "Theta(log* n)"
    assert "open" in DIAMOND["quantum-LOCAL"]


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_a1_matches_global(name):
    alg = BUILTINS[name]
    g = cycle(4).with_labels(node_labels={v: v % 3 for v in range(4)})
    gp, _ = encode_ab(g)
    ids = {v: i for i, v in enumerate(sorted(gp.vertices))}
    res = simulate_a1_prime(alg, gp, ids, LAM)
    assert res.outputs == global_a1(alg, gp, ids)
    assert all(r <= LAM * alg.locality + 3 * LAM for r in res.ledger.values())


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_a2_matches_global(name):
    alg = BUILTINS[name]
    g = complete(4).with_labels(node_labels={v: v % 3 for v in range(4)})
    ids = {v: 10 + v for v in g.vertices}
    res = simulate_a2_prime(alg, g, ids)
    assert res.outputs == global_a2(alg, g, ids)
    assert set(res.ledger.values()) == {alg.locality}


def test_a2_with_larger_radius():
    alg = LocalAlgorithm(4, lambda view: (view.ids[view.center], view.ball.graph.n), "probe")
    g = path(4).with_labels(node_labels={v: 0 for v in range(4)})
    ids = {v: v for v in g.vertices}
    res = simulate_a2_prime(alg, g, ids)
    assert res.outputs == global_a2(alg, g, ids)


def test_induced_order_first_touch():
    g = path(3).with_labels(node_labels={0: 0, 1: 0, 2: 0})
    gp, dm = encode_ab(g)
    order = list(dm.nodes[2]) + list(dm.edges[0]) + list(dm.nodes[0]) + list(dm.nodes[1])
    assert induced_decoded_order(dm, order) == [2, 0, 1]


def test_outcome_checks_probabilities():
    with pytest.raises(ValueError):
        Outcome([({0: 1}, Fraction(1, 2))])
    with pytest.raises(ValueError):
        Outcome([({0: 1}, Fraction(3, 2)), ({0: 2}, Fraction(-1, 2))])
    o = Outcome([({0: 1}, Fraction(1, 3)), ({0: 2}, Fraction(2, 3))])
    assert o.success(lambda lab: lab[0] == 2) == Fraction(2, 3)
    assert o.marginal([0]) == {(1,): Fraction(1, 3), (2,): Fraction(2, 3)}


def test_lift_outcome_identity():
    o = Outcome([({0: 1}, Fraction(1, 4)), ({0: 2}, Fraction(3, 4))])
    lo = lift_outcome(o, dict, lambda lab: lab[0] == 1, lambda lab: lab[0] == 1)
    assert lo.sound and lo.source_success == lo.target_success == Fraction(1, 4)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(sorted(BUILTINS)))
def test_a2_matches_global_random(seed, name):
    rng = random.Random(seed)
    g = random_labeled_graph(rng, max_n=5)
    ids = dict(zip(g.sorted_vertices(), rng.sample(range(g.n ** 2 + 5), g.n)))
    alg = BUILTINS[name]
    assert simulate_a2_prime(alg, g, ids).outputs == global_a2(alg, g, ids)
