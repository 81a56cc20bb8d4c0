"""Deterministic LOCAL / SLOCAL runners, the encode/decode algorithm simulations and outcome lifting."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .encode_ab import DecodeMap, _Builder, _edge_gadget, _node_gadget, decode_ab, encode_ab, provenance_id
from .formalisms import BOT
from .graphs import AnyGraph, CenteredGraph, LabeledGraph, MultiGraph, ball, is_distance_coloring, power_coloring

# Symmetry-breaking locality per model (metadata only; never computed).
DIAMOND: Dict[str, str] = {
    "det-LOCAL": "Theta(log* n)",
    "rand-LOCAL": "Theta(log* n)",
    "SLOCAL": "O(1)",
    "online-LOCAL": "O(1)",
    "non-signaling": "O(1)",
    "bounded-dependence": "O(1)",
    "quantum-LOCAL": "O(log* n) upper bound; tight value open",
}


@dataclass
class SimInstance:
    graph: AnyGraph
    ids: Dict[int, int]
    inputs: Optional[Dict[int, Any]] = None
    T: int = 0
    c: int = 3

    def __post_init__(self):
        if set(self.ids) != set(self.graph.vertices):
            raise ValueError("every vertex needs an id")
        if len(set(self.ids.values())) != len(self.ids):
            raise ValueError("ids must be unique")
        bound = max(2, self.graph.n) ** self.c
        if any(not 0 <= i < bound for i in self.ids.values()):
            raise ValueError(f"ids must lie in [0, n^{self.c})")

    @classmethod
    def default(cls, graph: AnyGraph, T: int = 0, inputs=None) -> "SimInstance":
        return cls(graph, {v: i for i, v in enumerate(sorted(graph.vertices))}, inputs, T)


@dataclass
class LocalView:
    """What a vertex sees: its labeled radius-T ball, ids in it, and (SLOCAL) already-fixed outputs."""

    ball: CenteredGraph
    ids: Dict[int, int]
    states: Dict[int, Any] = field(default_factory=dict)

    @property
    def center(self) -> int:
        return self.ball.center

    def label(self, v: Optional[int] = None):
        return self.ball.graph.label(self.center if v is None else v)


@dataclass
class LocalAlgorithm:
    locality: int
    fn: Callable[[LocalView], Any]
    name: str = ""


@dataclass
class RunResult:
    outputs: Dict[int, Any]
    ledger: Dict[int, int]


def _labeled(g: AnyGraph, inputs):
    if inputs is None:
        return g
    if isinstance(g, MultiGraph):
        return MultiGraph(g.vertices, g.edges, inputs, g.edge_labels)
    return g.with_labels(node_labels=inputs)


def _view(g: AnyGraph, v: int, T: int, ids: Dict[int, int]) -> LocalView:
    b = ball(g, v, T)
    return LocalView(b, {x: ids[x] for x in b.graph.vertices})


def run_local(alg: LocalAlgorithm, inst: SimInstance) -> RunResult:
    if alg.locality > inst.T:
        raise ValueError(f"algorithm locality {alg.locality} exceeds the round budget {inst.T}")
    g = _labeled(inst.graph, inst.inputs)
    out, led = {}, {}
    for v in sorted(g.vertices):
        out[v] = alg.fn(_view(g, v, alg.locality, inst.ids))
        led[v] = alg.locality
    return RunResult(out, led)


def run_slocal(alg: LocalAlgorithm, inst: SimInstance, order: Sequence[int]) -> RunResult:
    if sorted(order) != sorted(inst.graph.vertices):
        raise ValueError("order must be a permutation of the vertices")
    g = _labeled(inst.graph, inst.inputs)
    out: Dict[int, Any] = {}
    led = {}
    for v in order:
        view = _view(g, v, alg.locality, inst.ids)
        view.states = {x: out[x] for x in view.ball.graph.vertices if x in out}
        out[v] = alg.fn(view)
        led[v] = alg.locality
    return RunResult(out, led)


@dataclass
class SymmetryOracle:
    k: int
    coloring: Dict[int, int]

    @property
    def colors(self) -> int:
        return len(set(self.coloring.values()))


def distance_k_coloring(inst: SimInstance, k: int) -> SymmetryOracle:
    """Greedy colouring of the k-th power graph, processed by increasing id."""
    order = sorted(inst.graph.vertices, key=lambda v: inst.ids[v])
    col = power_coloring(inst.graph, k, order)
    assert is_distance_coloring(inst.graph, col, k)
    return SymmetryOracle(k, col)


# ---------------------------------------------------------------- built-in algorithms

def _const(view: LocalView):
    return 1


def _id_parity(view: LocalView):
    return view.ids[view.center] % 2


def _max_id(view: LocalView):
    return max(view.ids.values())


def _greedy_color(view: LocalView):
    used = {view.states[u] for u in view.ball.graph.neighbors(view.center) if u in view.states}
    c = 1
    while c in used:
        c += 1
    return c


def _echo(view: LocalView):
    return view.label()


BUILTINS: Dict[str, LocalAlgorithm] = {
    "const": LocalAlgorithm(0, _const, "const"),
    "id-parity": LocalAlgorithm(0, _id_parity, "id-parity"),
    "max-id": LocalAlgorithm(1, _max_id, "max-id"),
    "greedy-color": LocalAlgorithm(1, _greedy_color, "greedy-color"),
    "echo": LocalAlgorithm(0, _echo, "echo"),
}


def builtin(name: str) -> LocalAlgorithm:
    if name.startswith("builtin:"):
        name = name[len("builtin:"):]
    if name not in BUILTINS:
        raise KeyError(f"unknown built-in algorithm {name!r}; known: {sorted(BUILTINS)}")
    return BUILTINS[name]


# ---------------------------------------------------------------- A'_1: run A on the decoded graph

def decoded_ids(dm: DecodeMap, ids: Dict[int, int]) -> Dict[int, int]:
    return {u: min(ids[y] for y in vs) for u, vs in dm.nodes.items()}


def simulate_a1_prime(alg_a: LocalAlgorithm, gp: LabeledGraph, ids: Dict[int, int], lam: int, max_degree: int = 3) -> RunResult:
    """Every vertex decodes its radius lam*T+2*lam ball and runs A at its decoded vertex.

    Edge-gadget vertices output BOT.
    """
    radius = lam * alg_a.locality + 2 * lam
    out, led = {}, {}
    for v in sorted(gp.vertices):
        b = ball(gp, v, radius)
        mg, dm = decode_ab(b.graph, max_degree)
        kind, u = dm.owner[v]
        led[v] = radius
        if kind == "edge":
            out[v] = BOT
            continue
        dids = decoded_ids(dm, ids)
        out[v] = alg_a.fn(_view(mg, u, alg_a.locality, dids))
    return RunResult(out, led)


def global_a1(alg_a: LocalAlgorithm, gp: LabeledGraph, ids: Dict[int, int], max_degree: int = 3) -> Dict[int, Any]:
    """Reference: decode the whole graph, run A, copy outputs onto gadgets."""
    mg, dm = decode_ab(gp, max_degree)
    dids = decoded_ids(dm, ids)
    sig = {u: alg_a.fn(_view(mg, u, alg_a.locality, dids)) for u in dm.nodes}
    return {v: BOT if kind == "edge" else sig[x] for v, (kind, x) in dm.owner.items()}


# ---------------------------------------------------------------- A'_2: run B on a locally encoded ball

def encode_local(g: LabeledGraph, ids: Dict[int, int]) -> Tuple[LabeledGraph, Dict[int, int], Dict[tuple, int]]:
    """Encode g; return the encoded graph, provenance ids, and tag -> vertex."""
    gp, dm = encode_ab(g)
    pids = {x: provenance_id(tag, ids) for x, tag in dm.tags.items()}
    return gp, pids, {tag: x for x, tag in dm.tags.items()}


def simulate_a2_prime(alg_b: LocalAlgorithm, g: LabeledGraph, ids: Dict[int, int]) -> RunResult:
    """Every vertex encodes its radius-T ball and runs B at the first cycle vertex of its own gadget."""
    T = alg_b.locality
    out, led = {}, {}
    for v in sorted(g.vertices):
        led[v] = T
        if T == 0:
            single = LabeledGraph([0], [])
            vid = provenance_id(("node", v, 0), ids)
            out[v] = alg_b.fn(LocalView(CenteredGraph(single, 0, 0), {0: vid}))
            continue
        b = ball(g, v, T).graph
        gp, pids, by_tag = encode_local(b, ids)
        out[v] = alg_b.fn(_view(gp, by_tag[("node", v, 0)], T, pids))
    return RunResult(out, led)


def global_a2(alg_b: LocalAlgorithm, g: LabeledGraph, ids: Dict[int, int]) -> Dict[int, Any]:
    """Reference: encode globally, run B everywhere, read each gadget's minimum-id vertex."""
    gp, pids, _ = encode_local(g, ids)
    _, dm = encode_ab(g)
    sig_b = {x: alg_b.fn(_view(gp, x, alg_b.locality, pids)) for x in gp.vertices}
    return {u: sig_b[min(dm.nodes[u], key=lambda y: pids[y])] for u in dm.nodes}


def induced_decoded_order(dm: DecodeMap, order: Sequence[int]) -> List[int]:
    """Order on decoded vertices: a gadget enters when its first vertex is processed; edge gadgets are skipped."""
    seen, out = set(), []
    for x in order:
        kind, u = dm.owner[x]
        if kind == "edge" or u in seen:
            continue
        seen.add(u)
        out.append(u)
    return out


# ---------------------------------------------------------------- outcomes

@dataclass
class Outcome:
    support: List[Tuple[Dict[Any, Any], Fraction]]

    def __post_init__(self):
        total = Fraction(0)
        for _, p in self.support:
            p = Fraction(p)
            if p < 0:
                raise ValueError("negative probability")
            total += p
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
        self.support = [(lab, Fraction(p)) for lab, p in self.support]

    def success(self, verifier: Callable[[Dict[Any, Any]], bool]) -> Fraction:
        return sum((p for lab, p in self.support if verifier(lab)), Fraction(0))

    def marginal(self, vertices: Sequence[Any]) -> Dict[tuple, Fraction]:
        m: Dict[tuple, Fraction] = {}
        for lab, p in self.support:
            key = tuple(lab.get(v) for v in vertices)
            m[key] = m.get(key, Fraction(0)) + p
        return m


@dataclass
class LiftedOutcome:
    outcome: Outcome
    source_success: Fraction
    target_success: Fraction

    @property
    def sound(self) -> bool:
        return self.target_success >= self.source_success


def lift_outcome(o: Outcome, lift: Callable[[Dict], Dict], v_src: Callable[[Dict], bool], v_dst: Callable[[Dict], bool]) -> LiftedOutcome:
    lifted = Outcome([(lift(lab), p) for lab, p in o.support])
    return LiftedOutcome(lifted, o.success(v_src), lifted.success(v_dst))
