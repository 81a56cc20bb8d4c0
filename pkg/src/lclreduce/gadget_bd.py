"""A-gadget expanded-edge encoding of 3-regular graphs, the reconstruction-based problem D and its lifts."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .formalisms import BOT, BudgetExceeded, LCLProblem, PNProblem
from .graphs import (
    CenteredGraph,
    Edge,
    LabeledGraph,
    MultiGraph,
    RootedView,
    TNode,
    bfs_distances,
    connected_components,
    ekey,
    gdist_all,
    is_distance_coloring,
    power_coloring,
    tnode,
    triangle_vertices,
    within,
)

A_EDGES: Tuple[Edge, ...] = ((1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5), (5, 6), (4, 6))
A_STUBS = (1, 6)


@dataclass(frozen=True)
class AGadget:
    vertices: Tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    edges: Tuple[Edge, ...] = A_EDGES
    stubs: Tuple[int, int] = A_STUBS

    def graph(self) -> LabeledGraph:
        return LabeledGraph(self.vertices, self.edges)


def a_gadget() -> AGadget:
    return AGadget()


@dataclass
class GadgetedGraph:
    """Expanded graph with half-unit weights, vertex classes and per-chain provenance."""

    graph: LabeledGraph
    classes: Dict[int, str]
    originals: Dict[int, int]
    chains: List[Tuple[int, int, Tuple[int, ...]]]
    base: Optional[LabeledGraph] = None
    coloring: Dict[Edge, int] = field(default_factory=dict)

    @property
    def original_set(self) -> Set[int]:
        return {v for v, c in self.classes.items() if c == "original"}

    def original_of(self) -> Dict[int, int]:
        return {w: v for v, w in self.originals.items()}


# ---------------------------------------------------------------- edge colourings

def line_distances(g: LabeledGraph, e: Edge, limit: int) -> Dict[Edge, int]:
    """Distance in the line graph (edges sharing an endpoint are at distance 1)."""
    dist = {e: 0}
    frontier = [e]
    for d in range(1, limit + 1):
        nxt = []
        for f in frontier:
            for x in f:
                for y in g.neighbors(x):
                    h = ekey(x, y)
                    if h not in dist:
                        dist[h] = d
                        nxt.append(h)
        frontier = nxt
    return dist


def is_distance_edge_coloring(g: LabeledGraph, x: Dict[Edge, int], d: int) -> bool:
    for e in g.edges:
        for f in line_distances(g, e, d):
            if f != e and x.get(f) == x.get(e):
                return False
    return True


def distance_edge_coloring(g: LabeledGraph, d: int) -> Dict[Edge, int]:
    """Greedy first-fit edge colouring where edges at line distance <= d differ; colours start at 1."""
    col: Dict[Edge, int] = {}
    for e in g.sorted_edges():
        used = {col[f] for f in line_distances(g, e, d) if f in col}
        c = 1
        while c in used:
            c += 1
        col[e] = c
    return col


# ---------------------------------------------------------------- gadgeting

def expand_edges(vertices: Sequence[int], edges: Sequence[Tuple[int, int, int]]) -> GadgetedGraph:
    """Replace each (u, v, length) by a chain of A-gadgets running from u to v.

    Parallel edges are allowed here, so multigraph bases can be expanded too.
    Originals are renumbered 0..n-1 in the given order; gadget vertices follow.
    """
    originals = {v: i for i, v in enumerate(vertices)}
    nxt = len(originals)
    es: List[Edge] = []
    chains = []
    for u, v, length in edges:
        if not isinstance(length, int) or length < 1:
            raise ValueError(f"edge {u}-{v}: chain length must be a positive integer, got {length!r}")
        members = []
        prev = originals[u]
        for _ in range(length):
            ids = {i: nxt + i - 1 for i in range(1, 7)}
            nxt += 6
            es.extend((ids[a], ids[b]) for a, b in A_EDGES)
            es.append((prev, ids[1]))
            prev = ids[6]
            members.extend(ids[i] for i in range(1, 7))
        es.append((prev, originals[v]))
        chains.append((u, v, tuple(members)))
    orig_ids = set(originals.values())
    weights = {ekey(a, b): 1 if (a in orig_ids or b in orig_ids) else 0 for a, b in es}
    g = LabeledGraph(range(nxt), es, edge_weights=weights)
    classes = {}
    for w in g.vertices:
        if w in orig_ids:
            classes[w] = "original"
        elif any(y in orig_ids for y in g.neighbors(w)):
            classes[w] = "outer"
        else:
            classes[w] = "inner"
    return GadgetedGraph(g, classes, originals, chains)


def gadget_bd(g: LabeledGraph, x: Optional[Dict[Edge, int]] = None, r_b: int = 1) -> GadgetedGraph:
    """Expand every edge of a 3-regular simple graph into a chain whose length is its colour.

    Without ``x`` a greedy distance-2r_B edge colouring is used. Chains run from the
    lower-id endpoint.
    """
    if not g.is_regular(3):
        raise ValueError("gadgeting expects a 3-regular graph")
    if x is None:
        x = distance_edge_coloring(g, 2 * r_b)
    for e in g.edges:
        c = x.get(e)
        if not isinstance(c, int) or isinstance(c, bool) or c < 1:
            raise ValueError(f"edge {e} needs a positive integer colour, got {c!r}")
    if not is_distance_edge_coloring(g, x, 2 * r_b):
        raise ValueError(f"not a distance-{2 * r_b} edge colouring")
    gg = expand_edges(g.sorted_vertices(), [(u, v, x[(u, v)]) for u, v in g.sorted_edges()])
    gg.base = g
    gg.coloring = dict(x)
    return gg


def classify_vertices(g) -> Dict[int, str]:
    tri = triangle_vertices(g)
    return {v: "triangle" if v in tri else "non-triangle" for v in g.vertices}


# ---------------------------------------------------------------- chain parsing

def _other(g, v, exclude) -> Optional[int]:
    rest = [u for u in g.neighbors(v) if u not in exclude]
    return rest[0] if len(rest) == 1 else None


def parse_a_gadget(g, one: int, stub: int) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Match an A-gadget entered at ``one`` from ``stub``; return its vertices and exit neighbour."""
    if g.degree(one) != 3 or not g.has_edge(one, stub):
        return None
    nb = [y for y in g.neighbors(one) if y != stub]
    if len(nb) != 2:
        return None
    two, three = nb
    if not g.has_edge(two, three) or g.degree(two) != 3 or g.degree(three) != 3:
        return None
    four = _other(g, two, {one, three})
    five = _other(g, three, {one, two})
    if four is None or five is None or four == five or {four, five} & {one, two, three, stub}:
        return None
    if not g.has_edge(four, five) or g.degree(four) != 3 or g.degree(five) != 3:
        return None
    six = _other(g, four, {two, five})
    if six is None or six != _other(g, five, {three, four}) or six in (one, two, three, stub):
        return None
    if g.degree(six) != 3:
        return None
    out = _other(g, six, {four, five})
    if out is None or out in (one, two, three, four, five):
        return None
    return (one, two, three, four, five, six), out


def parse_chain(g, start: int, first: int, is_end: Callable[[int], bool]) -> Optional[Tuple[List[Tuple[int, ...]], int]]:
    """Follow consecutive A-gadgets from ``start`` through ``first`` until an end vertex."""
    gadgets: List[Tuple[int, ...]] = []
    seen = {start}
    prev, cur = start, first
    while True:
        if is_end(cur):
            return (gadgets, cur) if gadgets else None
        got = parse_a_gadget(g, cur, prev)
        if got is None:
            return None
        vs, out = got
        if seen & set(vs):
            return None
        seen.update(vs)
        gadgets.append(vs)
        prev, cur = vs[5], out
        if cur in seen and not is_end(cur):
            return None


@dataclass
class Contracted:
    graph: LabeledGraph
    coloring: Dict[Edge, int]
    chains: Dict[Edge, Tuple[int, ...]]
    reversed: List[Tuple[int, int, Tuple[int, ...]]]


def contract_db(gp: LabeledGraph) -> Contracted:
    """Contract every detected expanded edge; contractions creating loops or parallel edges are undone."""
    tri = triangle_vertices(gp)
    ends = [v for v in gp.sorted_vertices() if v not in tri and gp.degree(v) == 3]
    is_end = lambda y: y not in tri
    found: Dict[FrozenSet[int], Tuple[int, int, Tuple[int, ...]]] = {}
    for o in ends:
        for x in gp.neighbors(o):
            got = parse_chain(gp, o, x, is_end)
            if got is None:
                continue
            gadgets, end = got
            members = tuple(v for vs in gadgets for v in vs)
            key = frozenset(members)
            if key not in found:
                found[key] = (o, end, members)
    taken: Set[int] = set()
    chains = []
    for key in sorted(found, key=lambda k: min(k)):
        if key & taken:
            continue
        taken |= key
        chains.append(found[key])
    pair_count: Dict[Edge, int] = {}
    for u, v, _ in chains:
        if u != v:
            pair_count[ekey(u, v)] = pair_count.get(ekey(u, v), 0) + 1
    keep_edges = set(gp.edges)
    coloring: Dict[Edge, int] = {}
    chain_map: Dict[Edge, Tuple[int, ...]] = {}
    reverted = []
    drop: Set[int] = set()
    for u, v, members in chains:
        e = ekey(u, v)
        if u == v or pair_count[e] > 1 or gp.has_edge(u, v):
            reverted.append((u, v, members))
            continue
        drop.update(members)
        coloring[e] = len(members) // 6
        chain_map[e] = members
    es = [e for e in keep_edges if not (set(e) & drop)] + list(coloring)
    vs = [v for v in gp.vertices if v not in drop]
    return Contracted(LabeledGraph(vs, es), coloring, chain_map, reverted)


# ---------------------------------------------------------------- correctly gadgeted balls

@dataclass
class BallStructure:
    contracted: LabeledGraph
    lengths: Dict[Edge, int]
    chains: Dict[Edge, Tuple[int, ...]]


def gadget_ball_structure(h: CenteredGraph) -> Optional[BallStructure]:
    """Decide structurally whether h is an r-gball of a correctly gadgeted graph around an original."""
    g = h.graph
    if isinstance(g, MultiGraph):
        if not g.is_simple():
            return None
        g = g.to_simple()
    r = h.radius
    tri = triangle_vertices(g)
    if h.center in tri:
        return None
    originals = {v for v in g.vertices if v not in tri}
    for a, b in g.edges:
        if a in originals and b in originals:
            return None
    rest = g.subgraph([v for v in g.vertices if v not in originals])
    lengths: Dict[Edge, int] = {}
    chains: Dict[Edge, Tuple[int, ...]] = {}
    for comp in connected_components(rest):
        comp_set = set(comp)
        attach = [(x, o) for x in sorted(comp) for o in g.neighbors(x) if o in originals]
        if len(attach) != 2 or attach[0][0] == attach[1][0] or attach[0][1] == attach[1][1]:
            return None
        (x, o), (_, o2) = attach
        got = parse_chain(g, o, x, lambda y: y in originals)
        if got is None:
            return None
        gadgets, end = got
        members = tuple(v for vs in gadgets for v in vs)
        if end != o2 or set(members) != comp_set:
            return None
        e = ekey(o, o2)
        if e in lengths:
            return None
        lengths[e] = len(gadgets)
        chains[e] = members
    contracted = LabeledGraph(originals, lengths)
    dist = bfs_distances(contracted, h.center)
    if set(dist) != originals:
        return None
    for v in originals:
        if dist[v] > r:
            return None
        if dist[v] < r and contracted.degree(v) != 3:
            return None
    for a, b in contracted.edges:
        if dist[a] == r and dist[b] == r:
            return None
    if len(set(lengths.values())) != len(lengths):
        return None
    return BallStructure(contracted, lengths, chains)


def is_correctly_gadgeted_ball(h: CenteredGraph) -> bool:
    return gadget_ball_structure(h) is not None


# ---------------------------------------------------------------- constants

def ball_vertex_bound(r: int) -> int:
    """Largest vertex count of a 3-regular graph with a vertex of eccentricity <= r."""
    return 3 * 2 ** r - 2


def ball_edge_bound(r: int) -> int:
    return 3 * ball_vertex_bound(r) // 2


@dataclass(frozen=True)
class DConstants:
    r_b: int
    k: int
    r_d: int
    zeta: Any


ZETA_EXACT_LIMIT = 10000


def d_constants(r_b: int) -> DConstants:
    """k and zeta one above the closed-form bounds; zeta is kept symbolic when r_D is huge."""
    if r_b < 1:
        raise ValueError("r_B must be positive")
    k = ball_edge_bound(r_b) + 1
    r_d = (4 * k + 1) * r_b + 1
    zeta: Any = ball_vertex_bound(r_d) + 1 if r_d <= ZETA_EXACT_LIMIT else f"3*2^{r_d}-1"
    return DConstants(r_b, k, r_d, zeta)


def enumerate_cubic_radius(r: int, budget: int = 2 * 10**6) -> List[LabeledGraph]:
    """All 3-regular simple graphs (up to relabeling duplicates) grown in BFS layers of depth <= r from vertex 0."""
    out: List[LabeledGraph] = []
    steps = [0]

    def rec(adj: List[Set[int]], layer: List[int], i: int):
        steps[0] += 1
        if steps[0] > budget:
            raise BudgetExceeded("cubic-graph enumeration")
        if i == len(adj):
            out.append(LabeledGraph(range(len(adj)), [(a, b) for a in range(len(adj)) for b in adj[a] if a < b]))
            return
        need = 3 - len(adj[i])
        if need < 0:
            return
        cands = [j for j in range(i + 1, len(adj)) if len(adj[j]) < 3 and j not in adj[i] and abs(layer[j] - layer[i]) <= 1]
        for new in range(need + 1):
            if new and layer[i] + 1 > r:
                break
            for pick in itertools.combinations(cands, need - new):
                adj2 = [set(s) for s in adj]
                layer2 = list(layer)
                for j in pick:
                    adj2[i].add(j)
                    adj2[j].add(i)
                for _ in range(new):
                    j = len(adj2)
                    adj2.append({i})
                    adj2[i].add(j)
                    layer2.append(layer[i] + 1)
                rec(adj2, layer2, i + 1)

    rec([set()], [0], 0)
    return out


def max_edges_radius(r: int) -> int:
    return max(g.m for g in enumerate_cubic_radius(r))


# ---------------------------------------------------------------- restricted views

class InsufficientDepth(ValueError):
    """The view is too shallow to classify triangle status of its vertices."""


@dataclass(frozen=True)
class RestrictedView:
    """Pruned walk tree whose leaves are the r_B-th non-triangle vertex of every kept walk."""

    tree: TNode
    radius: int
    r_b: int
    root_color: Any
    color_edges: FrozenSet[Tuple[Any, Any]]
    color_labels: FrozenSet[Tuple[Any, Any]]


def _first(label):
    if not _well_formed(label):
        raise TypeError(f"expected a (colour, output) pair, got {label!r}")
    return label[0]


def _second(label):
    return label[1]


_REACH: Dict[tuple, Optional[Tuple[TNode, FrozenSet, FrozenSet]]] = {}


def _is_triangle(node: TNode, parent_color, color) -> bool:
    """Triangle status read off the view colours; the node and its children must be complete."""
    kids = [c for _, c in node.children]
    kid_colors = [color(c.label) for c in kids]
    below = [{color(gc.label) for _, gc in c.children} for c in kids]
    for i, a in enumerate(kids):
        if parent_color is not None and parent_color in below[i]:
            return True
        for j in range(len(kids)):
            if i != j and kid_colors[j] in below[i]:
                return True
    return False


def nt_restricted_view(view: RootedView, r_b: int, color: Callable = _first, blabel: Callable = _second) -> Optional[RestrictedView]:
    """Keep the walks reaching their r_B-th non-triangle vertex within depth radius-2.

    Returns None when the root is a triangle vertex or no walk qualifies. Triangle
    status uses colours, so it is meaningful once the colouring is reconstructible.
    """
    big = view.radius
    if big < 2:
        raise InsufficientDepth(f"view radius {big} cannot classify triangle status (need >= 2)")
    if r_b < 1:
        raise ValueError("r_B must be positive")
    root = view.root
    if _is_triangle(root, None, color):
        return None
    if len(_REACH) > 500000:
        _REACH.clear()

    def reach(node: TNode, pc, d: int, cnt: int):
        key = (node.digest, d, cnt, big, r_b, color, blabel)
        if key in _REACH:
            return _REACH[key]
        c = color(node.label)
        kept = []
        edges: Set = set()
        labs: Set = set()
        for el, ch in node.children:
            d2 = d + 1
            if d2 > big - 2:
                continue
            cc = color(ch.label)
            cnt2 = cnt + (0 if _is_triangle(ch, c, color) else 1)
            if cnt2 == r_b:
                kept.append((el, tnode(ch.label)))
                edges.add((c, cc))
                labs.add((cc, blabel(ch.label)))
                continue
            sub = reach(ch, c, d2, cnt2)
            if sub is None:
                continue
            t, e2, l2 = sub
            kept.append((el, t))
            edges.add((c, cc))
            labs.add((cc, blabel(ch.label)))
            edges |= e2
            labs |= l2
        res = None
        if kept:
            res = (tnode(node.label, kept), frozenset(edges), frozenset(labs))
        _REACH[key] = res
        return res

    got = reach(root, None, 0, 0)
    if got is None:
        return None
    t, edges, labs = got
    rc = color(root.label)
    return RestrictedView(t, big, r_b, rc, edges, labs | {(rc, blabel(root.label))})


def reconstructible(view: RootedView, color: Callable = _first) -> bool:
    """Distance-2 colouring on the view plus equal neighbour-colour sets for equal colours."""
    try:
        ok, entries, leaves = _scan(view.root, None, 0, view.radius, color)
    except (TypeError, IndexError, KeyError):
        return False
    if not ok:
        return False
    table: Dict[Any, FrozenSet] = {}
    for c, nb in entries:
        if table.setdefault(c, nb) != nb:
            return False
    for c, pc in leaves:
        if c in table and pc not in table[c]:
            return False
    return True


_SCAN: Dict[tuple, Tuple[bool, FrozenSet, FrozenSet]] = {}


def _scan(node: TNode, pc, d: int, big: int, color) -> Tuple[bool, FrozenSet, FrozenSet]:
    """Neighbour-colour entries of complete walk nodes at or below ``node`` and leaf (colour, parent colour) pairs."""
    key = (node.digest, pc, d, big, color)
    hit = _SCAN.get(key)
    if hit is not None:
        return hit
    if len(_SCAN) > 500000:
        _SCAN.clear()
    c = color(node.label)
    if d >= big:
        res = (True, frozenset(), frozenset({(c, pc)}))
        _SCAN[key] = res
        return res
    kids = [color(ch.label) for _, ch in node.children]
    closed = kids + [c] + ([] if pc is None else [pc])
    ok = len(set(closed)) == len(closed)
    nb = frozenset(kids) | (frozenset() if pc is None else frozenset({pc}))
    entries = {(c, nb)}
    leaves: Set = set()
    for _, ch in node.children:
        if not ok:
            break
        ok2, e2, l2 = _scan(ch, c, d + 1, big, color)
        ok = ok and ok2
        entries |= e2
        leaves |= l2
    res = (ok, frozenset(entries), frozenset(leaves))
    _SCAN[key] = res
    return res


def reconstruct_r1(tv: RestrictedView) -> MultiGraph:
    """Colour quotient of the restricted view: one vertex per colour, one edge per adjacent colour pair."""
    colors = {a for a, _ in tv.color_labels}
    pairs = sorted({tuple(sorted(e, key=repr)) for e in tv.color_edges}, key=repr)
    return MultiGraph(colors, pairs)


def reconstruct_r2(tv: RestrictedView, structure: Optional[BallStructure] = None) -> Tuple[CenteredGraph, Dict[Any, Any]]:
    """Contract triangle components of the quotient; label each original with its B output."""
    if structure is None:
        structure = gadget_ball_structure(CenteredGraph(reconstruct_r1(tv), tv.root_color, tv.r_b))
    if structure is None:
        raise ValueError("the colour quotient is not a correctly gadgeted ball")
    labels: Dict[Any, Set] = {}
    for c, b in tv.color_labels:
        labels.setdefault(c, set()).add(b)
    out = {}
    for v in structure.contracted.vertices:
        bs = labels.get(v, set())
        if len(bs) != 1:
            raise ValueError(f"colour class {v!r} carries {len(bs)} different B outputs")
        out[v] = next(iter(bs))
    g = structure.contracted.with_labels(node_labels=out)
    return CenteredGraph(g, tv.root_color, tv.r_b), out


# ---------------------------------------------------------------- problem D

_DMEMO: Dict[tuple, bool] = {}


def problem_d_membership(dc: DConstants, problem_b: LCLProblem, view: RootedView) -> bool:
    """Both accepting branches need a reconstructible colouring; the first also needs R2 in C_B."""
    key = (id(problem_b), dc, view.root.digest, view.radius)
    hit = _DMEMO.get(key)
    if hit is not None:
        return hit
    if len(_DMEMO) > 200000:
        _DMEMO.clear()
    res = _d_member(dc, problem_b, view)
    _DMEMO[key] = res
    return res


def _well_formed(label) -> bool:
    return isinstance(label, tuple) and len(label) == 2 and isinstance(label[0], int) and not isinstance(label[0], bool)


def _d_member(dc: DConstants, problem_b: LCLProblem, view: RootedView) -> bool:
    if not reconstructible(view):
        return False
    tv = nt_restricted_view(view, dc.r_b)
    if tv is None:
        return True
    h = CenteredGraph(reconstruct_r1(tv), tv.root_color, dc.r_b)
    st = gadget_ball_structure(h)
    if st is None:
        return True
    try:
        cg, _ = reconstruct_r2(tv, st)
    except ValueError:
        return False
    return problem_b.accepts(cg)


def problem_d(problem_b: LCLProblem, dc: Optional[DConstants] = None) -> PNProblem:
    dc = d_constants(problem_b.radius) if dc is None else dc
    return PNProblem(None, dc.r_d, lambda view: problem_d_membership(dc, problem_b, view), name=f"D[{problem_b.name}]")


# ---------------------------------------------------------------- lifts

def lift_b_to_d(sigma_b: Dict[int, Any], chi: Dict[int, int], gg: GadgetedGraph, r_d: int) -> Dict[int, Tuple[int, Any]]:
    """Colour component is chi; originals carry their B output, gadget vertices BOT."""
    if not is_distance_coloring(gg.graph, chi, 2 * r_d):
        raise ValueError(f"chi is not a distance-{2 * r_d} colouring of the gadgeted graph")
    back = gg.original_of()
    return {v: (chi[v], sigma_b[back[v]] if v in back else BOT) for v in gg.graph.vertices}


def lift_d_to_b(sigma_d: Dict[int, Tuple[int, Any]], gg: GadgetedGraph) -> Dict[int, Any]:
    return {u: sigma_d[w][1] for u, w in gg.originals.items()}


def default_chi(gg: GadgetedGraph, r_d: int) -> Dict[int, int]:
    """Greedy distance-2r_D colouring; the palette [zeta] is only an upper bound."""
    return power_coloring(gg.graph, 2 * r_d)


# ---------------------------------------------------------------- colouring theorem

@dataclass
class TheoremCheck:
    status: str
    counterexample: Optional[Dict[int, int]] = None
    witness: Optional[Tuple[int, int, int]] = None
    nodes: int = 0


def _gballs(g: LabeledGraph, r: int) -> Dict[int, Set[int]]:
    return {v: {u for u, d in gdist_all(g, v).items() if d <= 2 * r} for v in g.vertices}


def theorem_hypotheses(g: LabeledGraph, chi: Dict[int, Any], r: int, gb: Optional[Dict[int, Set[int]]] = None) -> bool:
    """Distance-2 colouring and edge consistency inside every r-gball."""
    if not is_distance_coloring(g, chi, 2):
        return False
    gb = _gballs(g, r) if gb is None else gb
    for v in g.vertices:
        for u in g.neighbors(v):
            for v2 in gb[v]:
                if chi[v2] == chi[v] and not any(chi[u2] == chi[u] for u2 in g.neighbors(v2)):
                    return False
    return True


def theorem_conclusion(g: LabeledGraph, chi: Dict[int, Any], originals: Iterable[int], r: int, gb=None) -> Optional[Tuple[int, int, int]]:
    """A witness (original, a, b) of a repeated colour in some original's r-gball, or None."""
    gb = _gballs(g, r) if gb is None else gb
    for o in sorted(originals):
        seen: Dict[Any, int] = {}
        for v in sorted(gb[o]):
            if chi[v] in seen:
                return (o, seen[chi[v]], v)
            seen[chi[v]] = v
    return None


def check_coloring_theorem(g: LabeledGraph, originals: Iterable[int], r: int = 1, budget: int = 10**6) -> TheoremCheck:
    """Search every colouring class structure satisfying the hypotheses for a repeated colour in an original's gball.

    For each candidate pair (a, b) the search starts from the partition merging a and b and
    closes it under edge consistency, branching over the neighbour that supplies each
    missing colour and pruning any class containing two vertices within distance 2. Every
    counterexample colouring refines to a partition reached this way, so an empty search
    proves the theorem on this graph.
    """
    originals = sorted(originals)
    vs = g.sorted_vertices()
    gb = _gballs(g, r)
    close = {v: within(g, v, 2) for v in vs}
    nbrs = {v: g.neighbors(v) for v in vs}
    nodes = [0]

    def merge(cls: Dict[int, int], mem: Dict[int, FrozenSet[int]], x: int, y: int):
        cx, cy = cls[x], cls[y]
        if cx == cy:
            return cls, mem
        a, b = mem[cx], mem[cy]
        if len(a) < len(b):
            cx, cy, a, b = cy, cx, b, a
        for p in b:
            if close[p] & a:
                return None
        cls2 = dict(cls)
        for p in b:
            cls2[p] = cx
        mem2 = dict(mem)
        mem2[cx] = a | b
        del mem2[cy]
        return cls2, mem2

    def unmet(cls, mem):
        for cid in sorted(mem):
            m = mem[cid]
            if len(m) < 2:
                continue
            for v in sorted(m):
                for u in nbrs[v]:
                    cu = cls[u]
                    for v2 in sorted(m & gb[v]):
                        if v2 != v and not any(cls[u2] == cu for u2 in nbrs[v2]):
                            return v2, u
        return None

    def search(state):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded("coloring-theorem search")
        cls, mem = state
        ob = unmet(cls, mem)
        if ob is None:
            return state
        v2, u = ob
        for u2 in nbrs[v2]:
            nxt = merge(cls, mem, u2, u)
            if nxt is not None:
                got = search(nxt)
                if got is not None:
                    return got
        return None

    done: Set[Tuple[int, int]] = set()
    try:
        for o in originals:
            region = sorted(gb[o])
            for i, a in enumerate(region):
                for b in region[i + 1:]:
                    if b in close[a] or (a, b) in done:
                        continue
                    done.add((a, b))
                    cls0 = {v: v for v in vs}
                    mem0 = {v: frozenset({v}) for v in vs}
                    start = merge(cls0, mem0, a, b)
                    found = search(start)
                    if found is not None:
                        cls, _ = found
                        ids = {c: i for i, c in enumerate(sorted(set(cls.values())), 1)}
                        return TheoremCheck("counterexample", {v: ids[cls[v]] for v in vs}, (o, a, b), nodes[0])
    except BudgetExceeded:
        return TheoremCheck("budget-exceeded", nodes=nodes[0])
    return TheoremCheck("exhausted-ok", nodes=nodes[0])


def set_partitions(n: int):
    """Restricted growth strings of length n."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, mx):
        if i == n:
            yield tuple(a)
            return
        for c in range(mx + 2):
            a[i] = c
            yield from rec(i + 1, max(mx, c))

    a[0] = 0
    yield from rec(1, 0)


def brute_force_theorem(g: LabeledGraph, originals: Iterable[int], r: int = 1) -> Optional[Dict[int, int]]:
    """Exhaustive oracle over all set partitions; returns a counterexample colouring or None."""
    vs = g.sorted_vertices()
    if len(vs) > 9:
        raise ValueError("the exhaustive oracle is limited to 9 vertices")
    gb = _gballs(g, r)
    originals = list(originals)
    for rgs in set_partitions(len(vs)):
        chi = dict(zip(vs, rgs))
        if theorem_hypotheses(g, chi, r, gb) and theorem_conclusion(g, chi, originals, r, gb) is not None:
            return chi
    return None


# ---------------------------------------------------------------- fixtures

def theta_gadgeting(lengths: Sequence[int] = (1, 2, 3)) -> GadgetedGraph:
    """Two originals joined by three chains (a multigraph base)."""
    return expand_edges([0, 1], [(0, 1, L) for L in lengths])


def twisted_twin_chains() -> Tuple[GadgetedGraph, Dict[int, int]]:
    """Double cover of the equal-length theta with one crossed chain, and its projection colouring."""
    base = expand_edges([0, 1], [(0, 1, 1)] * 3)
    lift = expand_edges([0, 1, 2, 3], [(0, 1, 1), (2, 3, 1), (0, 1, 1), (2, 3, 1), (0, 3, 1), (2, 1, 1)])
    proj = {0: 0, 1: 1, 2: 0, 3: 1}
    chi = {lift.originals[v]: base.originals[proj[v]] for v in proj}
    for j, (_, _, members) in enumerate(lift.chains):
        bmembers = base.chains[j // 2][2]
        for x, y in zip(members, bmembers):
            chi[x] = y
    return lift, chi
