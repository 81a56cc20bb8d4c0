"""Compilation of a PN-checkable problem into a half-edge (RE) problem and the lifts between them."""
from __future__ import annotations

from typing import Any, Callable, Dict, List, Optional, Tuple

from .formalisms import HalfEdgeLabeling, REProblem, multiset, require_cubic, verify_re
from .graphs import Edge, LabeledGraph, RootedView, TNode, ekey, pn_view_all, tnode, truncate, walker

ELabel = Tuple[RootedView, int]


def _child(view: RootedView, i: int) -> TNode:
    kids = view.root.children
    if not 0 <= i < len(kids):
        raise IndexError(f"root has {len(kids)} neighbours, no neighbour {i}")
    return kids[i][1]


def directional_subtree(view: RootedView, i: int) -> RootedView:
    """Walks continuing through the i-th root neighbour, re-rooted there (depth r-1)."""
    if view.radius < 1:
        raise ValueError("a radius-0 view has no neighbours")
    return RootedView(truncate(_child(view, i), view.radius - 1), view.radius - 1)


def pruned_subtree(view: RootedView, i: int) -> RootedView:
    """The view with the i-th root branch removed, cut to depth r-1."""
    if view.radius < 1:
        raise ValueError("a radius-0 view has no neighbours")
    _child(view, i)
    rest = [kv for j, kv in enumerate(view.root.children) if j != i]
    return RootedView(truncate(tnode(view.root.label, rest), view.radius - 1), view.radius - 1)


def _port_key(view: RootedView, i: int):
    return (directional_subtree(view, i).root.digest, pruned_subtree(view, i).root.digest, i)


def port_order(view: RootedView) -> List[int]:
    """Root neighbours (child indices) in port order 1, 2, 3, ..."""
    return sorted(range(len(view.root.children)), key=lambda i: _port_key(view, i))


def port_of_neighbor(view: RootedView, i: int) -> int:
    return port_order(view).index(i) + 1


def neighbor_by_port(view: RootedView, x: int) -> int:
    order = port_order(view)
    if not 1 <= x <= len(order):
        raise ValueError(f"port {x} out of range 1..{len(order)}")
    return order[x - 1]


def i_fit(a: ELabel, b: ELabel) -> bool:
    """Directional subtree on each side matches the pruned subtree on the other."""
    (ta, xa), (tb, xb) = a, b
    try:
        ua, ub = neighbor_by_port(ta, xa), neighbor_by_port(tb, xb)
    except ValueError:
        return False
    return (
        directional_subtree(ta, ua).root.digest == pruned_subtree(tb, ub).root.digest
        and pruned_subtree(ta, ua).root.digest == directional_subtree(tb, ub).root.digest
    )


def _is_elabel(x) -> bool:
    return isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], RootedView) and isinstance(x[1], int)


def problem_e(d_oracle: Callable[[RootedView], bool], name: str = "E") -> REProblem:
    """Node: one certified view carried with ports 1, 2, 3. Edge: the two labels fit."""
    cert: Dict[bytes, bool] = {}

    def certified(view: RootedView) -> bool:
        key = view.root.digest
        if key not in cert:
            cert[key] = bool(d_oracle(view))
        return cert[key]

    def node_ok(ms: Tuple) -> bool:
        if len(ms) != 3 or not all(_is_elabel(x) for x in ms):
            return False
        views = {x[0].root.digest for x in ms}
        if len(views) != 1 or sorted(x[1] for x in ms) != [1, 2, 3]:
            return False
        view = ms[0][0]
        return len(view.root.children) == 3 and certified(view)

    def edge_ok(ms: Tuple) -> bool:
        return len(ms) == 2 and all(_is_elabel(x) for x in ms) and i_fit(ms[0], ms[1])

    return REProblem(None, node_ok, edge_ok, name=name)


def _labeled(g: LabeledGraph, sigma: Dict[int, Any]) -> LabeledGraph:
    return g.with_labels(node_labels=sigma)


def graph_ports(g: LabeledGraph, sigma: Dict[int, Any], r: int) -> Tuple[Dict[int, RootedView], Dict[Tuple[int, int], int]]:
    """Views of all vertices and the port each vertex assigns to each neighbour.

    Neighbours with isomorphic branches are ordered by vertex id.
    """
    lg = _labeled(g, sigma)
    views = pn_view_all(lg, r)
    walk = walker(lg, lg.node_labels, lg.edge_labels)
    ports: Dict[Tuple[int, int], int] = {}
    for v, view in views.items():
        idx: Dict[bytes, List[int]] = {}
        for i, (_, ch) in enumerate(view.root.children):
            idx.setdefault(ch.digest, []).append(i)
        keyed = []
        for u in g.neighbors(v):
            i = idx[walk(u, v, r - 1).digest].pop(0)
            keyed.append((_port_key(view, i)[:2], u))
        for x, (_, u) in enumerate(sorted(keyed), 1):
            ports[(v, u)] = x
    return views, ports


def lift_d_to_e(g: LabeledGraph, sigma_d: Dict[int, Any], r: int, d_oracle: Optional[Callable[[RootedView], bool]] = None) -> HalfEdgeLabeling:
    """Each half-edge (v, vu) gets v's labeled view and the port of u."""
    require_cubic(g)
    views, ports = graph_ports(g, sigma_d, r)
    if d_oracle is not None:
        bad = [v for v in g.sorted_vertices() if not d_oracle(views[v])]
        if bad:
            raise ValueError(f"labeling is not legal for the source problem at {bad[:5]}")
    return {(v, ekey(v, u)): (views[v], ports[(v, u)]) for v in g.sorted_vertices() for u in g.neighbors(v)}


def lift_e_to_d(g: LabeledGraph, hel: HalfEdgeLabeling, problem: Optional[REProblem] = None) -> Dict[int, Any]:
    """Read back the root label of each node's view component."""
    if problem is not None:
        verdict = verify_re(problem, g, hel)
        if not verdict:
            raise ValueError(f"half-edge labeling is not legal: {verdict.failures[:5]}")
    out = {}
    for v in g.sorted_vertices():
        u = g.neighbors(v)[0]
        out[v] = hel[(v, ekey(v, u))][0].root.label
    return out


def t_good_failures(g: LabeledGraph, hel: HalfEdgeLabeling, r: int) -> List[Tuple[int, int]]:
    """Vertices and depths k where the real view with read-back labels differs from t(v) at depth k."""
    sigma = lift_e_to_d(g, hel)
    real = pn_view_all(_labeled(g, sigma), r)
    bad = []
    for v in g.sorted_vertices():
        u = g.neighbors(v)[0]
        t = hel[(v, ekey(v, u))][0].root
        for k in range(r + 1):
            if truncate(real[v].root, k).digest != truncate(t, k).digest:
                bad.append((v, k))
                break
    return bad


def permute_ports(g: LabeledGraph, hel: HalfEdgeLabeling, v: int, perm: Tuple[int, int, int]) -> HalfEdgeLabeling:
    """Relabel the ports at v by ``perm`` (port x becomes perm[x-1])."""
    out = dict(hel)
    for u in g.neighbors(v):
        k = (v, ekey(v, u))
        view, x = hel[k]
        out[k] = (view, perm[x - 1])
    return out
