"""The three problem formalisms (LCL, PN-checkable, RE), their verifiers and a brute-force solver."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .graphs import (
    CenteredGraph,
    Edge,
    LabeledGraph,
    RootedView,
    _enc,
    ball,
    bfs_distances,
    centered_iso,
    ekey,
    pn_view,
    pn_view_all,
    rooted_tree_iso,
)


BOT = "⊥"


class Reason(str, Enum):
    ALPHABET = "alphabet-violation"
    CONSTRAINT = "constraint-rejection"
    DEGREE = "degree-violation"


@dataclass
class Verdict:
    failures: List[Tuple[Any, Reason]] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.overall

    def failing(self) -> List[Any]:
        return [w for w, _ in self.failures]


class BudgetExceeded(Exception):
    """Raised when a search exhausts its configured budget before reaching a verdict."""


@dataclass
class LCLProblem:
    """Pi = (max degree, input alphabet, output alphabet, constraint, radius).

    With ``input_alphabet`` set, node labels seen by the constraint are (input, output)
    pairs; otherwise they are bare outputs. Edge labels carry edge outputs when the
    problem has an edge output alphabet.
    """

    max_degree: int
    input_alphabet: Optional[frozenset]
    output_alphabet: Optional[frozenset]
    radius: int
    constraint: Optional[Callable[[CenteredGraph], bool]] = None
    accepted: Optional[List[CenteredGraph]] = None
    edge_output_alphabet: Optional[frozenset] = None
    name: str = ""

    def accepts(self, cg: CenteredGraph) -> bool:
        if self.constraint is not None:
            return bool(self.constraint(cg))
        return any(centered_iso(cg, a) for a in self.accepted or ())


@dataclass
class PNProblem:
    output_alphabet: Optional[frozenset]
    radius: int
    constraint: Optional[Callable[[RootedView], bool]] = None
    accepted: Optional[List[RootedView]] = None
    input_alphabet: Optional[frozenset] = None
    max_degree: int = 3
    name: str = ""

    def accepts(self, view: RootedView) -> bool:
        if self.constraint is not None:
            return bool(self.constraint(view))
        keys = {a.root.digest for a in self.accepted or ()}
        return view.root.digest in keys


def multiset(*labels) -> Tuple:
    """Canonical multiset representation: labels sorted by their byte encoding."""
    return tuple(sorted(labels, key=_enc))


@dataclass
class REProblem:
    """Half-edge labeling problem on 3-regular graphs.

    Constraints are either explicit collections of multisets (built with ``multiset``)
    or predicates over such tuples.
    """

    alphabet: Optional[frozenset]
    node_constraint: Union[frozenset, Callable[[Tuple], bool]]
    edge_constraint: Union[frozenset, Callable[[Tuple], bool]]
    name: str = ""

    def node_ok(self, ms: Tuple) -> bool:
        if callable(self.node_constraint):
            return bool(self.node_constraint(ms))
        return ms in self.node_constraint

    def edge_ok(self, ms: Tuple) -> bool:
        if callable(self.edge_constraint):
            return bool(self.edge_constraint(ms))
        return ms in self.edge_constraint


Problem = Union[LCLProblem, PNProblem, REProblem]
HalfEdgeLabeling = Dict[Tuple[int, Edge], Any]


def half_edges(g: LabeledGraph) -> List[Tuple[int, Edge]]:
    return [(v, e) for v in g.sorted_vertices() for _, e in g.incident(v)]


def lcl_labeled(p: Union[LCLProblem, PNProblem], g: LabeledGraph, out: Dict[int, Any], edge_out=None) -> LabeledGraph:
    """The graph whose labels are what the problem's constraint sees."""
    if p.input_alphabet is not None:
        nl = {v: (g.label(v), out.get(v)) for v in g.vertices}
    else:
        nl = {v: out.get(v) for v in g.vertices}
    el = {}
    if getattr(p, "edge_output_alphabet", None) is not None and edge_out is not None:
        el = {e: edge_out.get(e) for e in g.edges}
    return LabeledGraph(g.vertices, g.edges, nl, el)


def _alphabet_failures(p, g: LabeledGraph, out, edge_out) -> Dict[Any, Reason]:
    bad: Dict[Any, Reason] = {}
    for v in g.sorted_vertices():
        if g.degree(v) > p.max_degree:
            bad[v] = Reason.DEGREE
        elif p.input_alphabet is not None and g.label(v) not in p.input_alphabet:
            bad[v] = Reason.ALPHABET
        elif v not in out or (p.output_alphabet is not None and out[v] not in p.output_alphabet):
            bad[v] = Reason.ALPHABET
    eo = getattr(p, "edge_output_alphabet", None)
    if eo is not None:
        edge_out = edge_out or {}
        for e in g.sorted_edges():
            if edge_out.get(e) not in eo:
                bad[e] = Reason.ALPHABET
    return bad


def _sort_key(w):
    return (0, w, 0) if isinstance(w, int) else (1, w[0], w[1])


def verify_lcl(p: LCLProblem, g: LabeledGraph, out: Dict[int, Any], edge_out: Optional[Dict[Edge, Any]] = None) -> Verdict:
    bad = _alphabet_failures(p, g, out, edge_out)
    lg = lcl_labeled(p, g, out, edge_out)
    for v in g.sorted_vertices():
        if v in bad:
            continue
        if not p.accepts(ball(lg, v, p.radius)):
            bad[v] = Reason.CONSTRAINT
    return Verdict(sorted(bad.items(), key=lambda kv: _sort_key(kv[0])))


def verify_pn(p: PNProblem, g: LabeledGraph, out: Dict[int, Any]) -> Verdict:
    bad = _alphabet_failures(p, g, out, None)
    lg = lcl_labeled(p, g, out)
    views = pn_view_all(lg, p.radius)
    for v in g.sorted_vertices():
        if v in bad:
            continue
        if not p.accepts(views[v]):
            bad[v] = Reason.CONSTRAINT
    return Verdict(sorted(bad.items(), key=lambda kv: _sort_key(kv[0])))


def require_cubic(g: LabeledGraph) -> None:
    if not g.is_regular(3):
        raise ValueError("the RE formalism is defined on 3-regular graphs only")


def verify_re(p: REProblem, g: LabeledGraph, hel: HalfEdgeLabeling) -> Verdict:
    require_cubic(g)
    slots = set(half_edges(g))
    extra = [k for k in hel if k not in slots]
    if extra:
        raise ValueError(f"labels on non-existent half-edges: {extra[:3]}")
    bad: Dict[Any, Reason] = {}
    for v in g.sorted_vertices():
        labs = [hel.get((v, e)) for _, e in g.incident(v)]
        if any((v, e) not in hel for _, e in g.incident(v)) or (
            p.alphabet is not None and any(l not in p.alphabet for l in labs)
        ):
            bad[v] = Reason.ALPHABET
        elif not p.node_ok(multiset(*labs)):
            bad[v] = Reason.CONSTRAINT
    for e in g.sorted_edges():
        u, w = e
        if (u, e) not in hel or (w, e) not in hel:
            bad[e] = Reason.ALPHABET
        elif not p.edge_ok(multiset(hel[(u, e)], hel[(w, e)])):
            bad[e] = Reason.CONSTRAINT
    return Verdict(sorted(bad.items(), key=lambda kv: _sort_key(kv[0])))


def verify(p: Problem, g: LabeledGraph, out, edge_out=None) -> Verdict:
    if isinstance(p, LCLProblem):
        return verify_lcl(p, g, out, edge_out)
    if isinstance(p, PNProblem):
        return verify_pn(p, g, out)
    return verify_re(p, g, out)


# ---------------------------------------------------------------- brute force

def _finite(alphabet, what):
    if alphabet is None:
        raise ValueError(f"{what} alphabet must be explicit for exhaustive search")
    return sorted(alphabet, key=_enc)


def enumerate_solutions(p: Problem, g: LabeledGraph, inputs: Optional[Dict[int, Any]] = None, budget: int = 10**6) -> Iterator:
    """Yield every accepted labeling in a stable order.

    For LCL problems with edge outputs the items are (node_out, edge_out) pairs.
    Raises BudgetExceeded after ``budget`` search steps.
    """
    if inputs is not None:
        g = g.with_labels(node_labels=inputs)
    if isinstance(p, REProblem):
        yield from _enum_re(p, g, budget)
    else:
        yield from _enum_local(p, g, budget)


def brute_force_solve(p: Problem, g: LabeledGraph, inputs: Optional[Dict[int, Any]] = None, budget: int = 10**6):
    """First accepted labeling, or None when the exhaustive search proves there is none."""
    for sol in enumerate_solutions(p, g, inputs, budget):
        return sol
    return None


def _bfs_order(g: LabeledGraph) -> List[int]:
    seen = set()
    order = []
    for s in g.sorted_vertices():
        if s in seen:
            continue
        dist = bfs_distances(g, s)
        for v in sorted(dist, key=lambda x: (dist[x], x)):
            seen.add(v)
            order.append(v)
    return order


def _enum_local(p, g: LabeledGraph, budget: int):
    node_alpha = _finite(p.output_alphabet, "output")
    has_edges = isinstance(p, LCLProblem) and p.edge_output_alphabet is not None
    edge_alpha = _finite(p.edge_output_alphabet, "edge output") if has_edges else []
    for v in g.vertices:
        if g.degree(v) > p.max_degree or (p.input_alphabet is not None and g.label(v) not in p.input_alphabet):
            return
    if not node_alpha and g.n:
        return
    order = _bfs_order(g)
    slots: List[Tuple[str, Any]] = []
    placed = set()
    for v in order:
        slots.append(("v", v))
        placed.add(v)
        if has_edges:
            for u in g.neighbors(v):
                if u in placed:
                    slots.append(("e", ekey(u, v)))
    pos = {s: i for i, s in enumerate(slots)}
    checks: Dict[int, List[int]] = {}
    for v in g.vertices:
        region = bfs_distances(g, v, p.radius)
        need = [pos[("v", x)] for x in region]
        if has_edges:
            need += [pos[("e", e)] for x, d in region.items() if d < p.radius for _, e in g.incident(x)]
        checks.setdefault(max(need) if need else -1, []).append(v)
    nout: Dict[int, Any] = {}
    eout: Dict[Edge, Any] = {}
    steps = [0]
    is_pn = isinstance(p, PNProblem)

    def ok_at(v):
        lg = lcl_labeled(p, g, nout, eout if has_edges else None)
        if is_pn:
            return p.accepts(pn_view(lg, v, p.radius))
        return p.accepts(ball(lg, v, p.radius))

    def rec(i):
        if i == len(slots):
            yield (dict(nout), dict(eout)) if has_edges else dict(nout)
            return
        kind, x = slots[i]
        for val in (node_alpha if kind == "v" else edge_alpha):
            steps[0] += 1
            if steps[0] > budget:
                raise BudgetExceeded(f"search exceeded {budget} steps")
            (nout if kind == "v" else eout)[x] = val
            if all(ok_at(v) for v in checks.get(i, ())):
                yield from rec(i + 1)
        (nout if kind == "v" else eout).pop(x, None)

    if g.n == 0:
        yield ({}, {}) if has_edges else {}
        return
    yield from rec(0)


def _enum_re(p: REProblem, g: LabeledGraph, budget: int):
    require_cubic(g)
    alpha = _finite(p.alphabet, "RE")
    slots = half_edges(g)
    node_done: Dict[int, int] = {}
    edge_done: Dict[int, List[Edge]] = {}
    for i, (v, e) in enumerate(slots):
        node_done[v] = i
    last = {}
    for i, (v, e) in enumerate(slots):
        last[e] = i
    for e, i in last.items():
        edge_done.setdefault(i, []).append(e)
    node_at: Dict[int, List[int]] = {}
    for v, i in node_done.items():
        node_at.setdefault(i, []).append(v)
    hel: HalfEdgeLabeling = {}
    steps = [0]

    def rec(i):
        if i == len(slots):
            yield dict(hel)
            return
        s = slots[i]
        for val in alpha:
            steps[0] += 1
            if steps[0] > budget:
                raise BudgetExceeded(f"search exceeded {budget} steps")
            hel[s] = val
            good = all(p.node_ok(multiset(*(hel[(v, e)] for _, e in g.incident(v)))) for v in node_at.get(i, ()))
            good = good and all(p.edge_ok(multiset(hel[(e[0], e)], hel[(e[1], e)])) for e in edge_done.get(i, ()))
            if good:
                yield from rec(i + 1)
        hel.pop(s, None)

    yield from rec(0)
