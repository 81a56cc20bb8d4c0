"""Ladder-gadget encoding of labeled bounded-degree graphs into 3-regular graphs, and its decoding."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .formalisms import BOT, LCLProblem, multiset
from .graphs import (
    CenteredGraph,
    LabeledGraph,
    MultiGraph,
    ball,
    bfs_distances,
    canonical_order,
    diameter,
    ekey,
)


# ---------------------------------------------------------------- ladders

def ladder_names(k: int) -> Tuple[List[str], List[Tuple[str, str]]]:
    """Vertex names and edge list of the ladder H_k (attachment vertex ``x``)."""
    if k < 0:
        raise ValueError("ladder length must be non-negative")
    a = [f"a{i}" for i in range(k + 1)]
    b = [f"b{i}" for i in range(k + 1)]
    names = ["x"] + a + b + ["t", "u", "v", "w"]
    edges = [("x", "a0"), ("x", "b0")]
    edges += [(a[i], b[i]) for i in range(k + 1)]
    edges += [(a[i], a[i + 1]) for i in range(k)] + [(b[i], b[i + 1]) for i in range(k)]
    edges += [(a[k], "t"), (b[k], "w")]
    edges += [("t", "u"), ("t", "v"), ("u", "v"), ("u", "w"), ("v", "w")]
    return names, edges


@dataclass(frozen=True)
class LadderGadget:
    k: int
    graph: LabeledGraph
    names: Dict[int, str]
    x: int


def ladder_gadget(k: int) -> LadderGadget:
    names, edges = ladder_names(k)
    idx = {nm: i for i, nm in enumerate(names)}
    g = LabeledGraph(range(len(names)), [(idx[a], idx[b]) for a, b in edges])
    return LadderGadget(k, g, dict(enumerate(names)), idx["x"])


# ---------------------------------------------------------------- decode map

@dataclass
class DecodeMap:
    """Correspondence between decoded vertices/edges and vertex sets of the 3-regular graph."""

    nodes: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    node_labels: Dict[int, Any] = field(default_factory=dict)
    edges: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    edge_ends: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    edge_labels: Dict[int, Any] = field(default_factory=dict)
    malformed_vertices: Tuple[int, ...] = ()
    malformed_edges: Tuple[Tuple[int, int], ...] = ()
    owner: Dict[int, Tuple[str, int]] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    tags: Dict[int, tuple] = field(default_factory=dict)

    def gadget_of(self, v: int) -> Tuple[int, ...]:
        kind, x = self.owner[v]
        if kind == "edge":
            return self.edges[x]
        return self.nodes[x]

    def decoded_vertex(self, v: int) -> Optional[int]:
        kind, x = self.owner[v]
        return None if kind == "edge" else x

    def graph(self) -> MultiGraph:
        """The decoded labeled multigraph; edge labels are unordered label pairs or BOT."""
        es = [self.edge_ends[i] for i in sorted(self.edge_ends)]
        labels = {}
        for j, i in enumerate(sorted(self.edge_ends)):
            lab = self.edge_labels[i]
            labels[j] = lab if lab == BOT else multiset(*lab)
        return MultiGraph(self.nodes.keys(), es, self.node_labels, labels)

    def to_json(self) -> dict:
        from .graphs import edge_str
        return {
            "nodes": {str(u): list(vs) for u, vs in sorted(self.nodes.items())},
            "node_labels": {str(u): l for u, l in sorted(self.node_labels.items())},
            "edges": {
                edge_str(self.edge_ends[i]) + (f"#{i}" if list(self.edge_ends.values()).count(self.edge_ends[i]) > 1 else ""): list(self.edges[i])
                for i in sorted(self.edges)
            },
            "edge_labels": {str(i): (list(l) if isinstance(l, tuple) else l) for i, l in sorted(self.edge_labels.items())},
            "malformed_vertices": list(self.malformed_vertices),
        }


@dataclass(frozen=True)
class FrameworkConstants:
    lam: int
    max_label: int
    max_degree: int

    def r_b(self, r_a: int) -> int:
        return self.lam * r_a


class _Builder:
    def __init__(self):
        self.edges: List[Tuple[int, int]] = []
        self.tags: Dict[int, tuple] = {}

    def add(self, tag) -> int:
        v = len(self.tags)
        self.tags[v] = tag
        return v

    def link(self, u, v):
        self.edges.append((u, v))

    def ladder(self, k, tag_prefix, start_index) -> Tuple[int, List[int]]:
        names, edges = ladder_names(k)
        ids = {}
        for i, nm in enumerate(names):
            ids[nm] = self.add(tag_prefix + (start_index + i,))
        for a, b in edges:
            self.link(ids[a], ids[b])
        return ids["x"], [ids[nm] for nm in names]


def _node_gadget(bld: _Builder, v, label, degree, tag=None):
    tag = ("node", v) if tag is None else tag
    cyc = [bld.add(tag + (i,)) for i in range(degree + 2)]
    for i in range(len(cyc)):
        bld.link(cyc[i], cyc[(i + 1) % len(cyc)])
    members = list(cyc)
    nxt = len(cyc)
    for pos in (0, 1):
        x, vs = bld.ladder(label, tag, nxt)
        nxt += len(vs)
        bld.link(cyc[pos], x)
        members += vs
    return cyc[2:], members


def _edge_gadget(bld: _Builder, pu, pv, lu, lv, tag):
    au = bld.add(tag + (0,))
    av = bld.add(tag + (1,))
    bld.link(pu, au)
    bld.link(au, av)
    bld.link(av, pv)
    members = [au, av]
    nxt = 2
    for a, lab in ((au, lu), (av, lv)):
        x, vs = bld.ladder(lab, tag, nxt)
        nxt += len(vs)
        bld.link(a, x)
        members += vs
    return members


def encode_ab(g: LabeledGraph, ports: str = "id") -> Tuple[LabeledGraph, DecodeMap]:
    """Replace every vertex by a node gadget and every edge by an edge gadget.

    ``ports="id"`` assigns a node gadget's ports to incident edges in increasing neighbour id,
    which only needs local information. ``ports="canonical"`` orders neighbours by their
    position in a canonical order of the whole input, so isomorphic inputs get isomorphic
    encodings.
    """
    if ports not in ("id", "canonical"):
        raise ValueError(f"unknown port rule {ports!r}")
    for v in g.sorted_vertices():
        if g.degree(v) == 0:
            raise ValueError(f"vertex {v} has degree 0; isolated vertices cannot be encoded")
        lab = g.label(v)
        if not isinstance(lab, int) or isinstance(lab, bool) or lab < 0:
            raise ValueError(f"vertex {v} needs a non-negative integer label, got {lab!r}")
    rank = {v: i for i, v in enumerate(canonical_order(g))} if ports == "canonical" else {v: v for v in g.vertices}
    vertex_order = sorted(g.vertices, key=rank.__getitem__)
    bld = _Builder()
    dm = DecodeMap()
    port_of: Dict[Tuple[int, int], int] = {}
    for v in vertex_order:
        nbrs = sorted(g.neighbors(v), key=rank.__getitem__)
        port_list, members = _node_gadget(bld, v, g.label(v), len(nbrs))
        for u, p in zip(nbrs, port_list):
            port_of[(v, u)] = p
        dm.nodes[v] = tuple(members)
        dm.node_labels[v] = g.label(v)
        for x in members:
            dm.owner[x] = ("node", v)
    edges = sorted(g.edges, key=lambda e: sorted((rank[e[0]], rank[e[1]])))
    for i, (u, v) in enumerate(edges):
        if rank[v] < rank[u]:
            u, v = v, u
        members = _edge_gadget(bld, port_of[(u, v)], port_of[(v, u)], g.label(u), g.label(v), ("edge", u, v))
        dm.edges[i] = tuple(members)
        dm.edge_ends[i] = (u, v)
        dm.edge_labels[i] = (g.label(u), g.label(v))
        for x in members:
            dm.owner[x] = ("edge", i)
    dm.tags = dict(bld.tags)
    return LabeledGraph(bld.tags.keys(), bld.edges), dm


def node_gadget_graph(label: int, degree: int) -> LabeledGraph:
    bld = _Builder()
    _, members = _node_gadget(bld, 0, label, degree)
    return LabeledGraph(bld.tags.keys(), bld.edges)


def edge_gadget_graph(lu: int, lv: int) -> LabeledGraph:
    bld = _Builder()
    pu, pv = bld.add(("p", 0)), bld.add(("p", 1))
    _edge_gadget(bld, pu, pv, lu, lv, ("edge", 0, 1))
    full = LabeledGraph(bld.tags.keys(), bld.edges)
    return full.subgraph([v for v in full.vertices if v not in (pu, pv)])


def framework_constants(max_label: int, max_degree: int = 3) -> FrameworkConstants:
    """Lambda = three times the largest diameter over the finite gadget catalog."""
    best = 0
    for k in range(max_label + 1):
        for d in range(1, max_degree + 1):
            best = max(best, diameter(node_gadget_graph(k, d)))
        for k2 in range(max_label + 1):
            best = max(best, diameter(edge_gadget_graph(k, k2)))
    return FrameworkConstants(3 * best, max_label, max_degree)


# ---------------------------------------------------------------- decoding

@dataclass(frozen=True)
class _Ladder:
    k: int
    x: int
    attach: int
    vertices: FrozenSet[int]


def _nbrs(g, v) -> Tuple[int, ...]:
    return g.neighbors(v)


def _parse_ladders_at(g, x) -> List[_Ladder]:
    """All exact ladder structures hanging off x; every internal vertex must have degree 3."""
    out = []
    nx_ = _nbrs(g, x)
    if len(nx_) != 3:
        return out
    for i in range(3):
        for j in range(i + 1, 3):
            a0, b0 = nx_[i], nx_[j]
            p = nx_[3 - i - j]
            if not g.has_edge(a0, b0):
                continue
            lad = _follow_ladder(g, x, a0, b0, p)
            if lad is not None:
                out.append(lad)
    return out


def _third(g, v, exclude) -> Optional[int]:
    rest = [u for u in _nbrs(g, v) if u not in exclude]
    return rest[0] if len(rest) == 1 else None


def _follow_ladder(g, x, a0, b0, p) -> Optional[_Ladder]:
    seen = {x, p}
    a, b = a0, b0
    pa, pb = x, x
    rungs = 0
    while True:
        if a in seen or b in seen or a == b:
            return None
        if len(_nbrs(g, a)) != 3 or len(_nbrs(g, b)) != 3 or not g.has_edge(a, b):
            return None
        seen.update((a, b))
        rungs += 1
        na = _third(g, a, {pa, b})
        nb = _third(g, b, {pb, a})
        if na is None or nb is None or na in seen or nb in seen or na == nb:
            return None
        if g.has_edge(na, nb):
            pa, pb, a, b = a, b, na, nb
            continue
        t, w = na, nb
        if len(_nbrs(g, t)) != 3 or len(_nbrs(g, w)) != 3:
            return None
        tu = set(_nbrs(g, t)) - {a}
        wu = set(_nbrs(g, w)) - {b}
        if tu != wu or len(tu) != 2:
            return None
        u, v = sorted(tu)
        if u in seen or v in seen or not g.has_edge(u, v):
            return None
        if set(_nbrs(g, u)) != {t, v, w} or set(_nbrs(g, v)) != {t, u, w}:
            return None
        verts = frozenset(seen | {t, w, u, v}) - {p}
        return _Ladder(rungs - 1, x, p, verts)


@dataclass(frozen=True)
class _NodeCand:
    vertices: FrozenSet[int]
    label: int
    ports: Tuple[int, ...]


@dataclass(frozen=True)
class _EdgeCand:
    vertices: FrozenSet[int]
    ends: Tuple[int, int]
    labels: Tuple[int, int]


def _node_candidates(g, ladders_at, max_degree) -> List[_NodeCand]:
    cands = {}
    for c1 in sorted(ladders_at):
        if len(_nbrs(g, c1)) != 3:
            continue
        for l1 in ladders_at[c1]:
            for c2 in _nbrs(g, c1):
                if c2 == l1.x or c2 not in ladders_at or len(_nbrs(g, c2)) != 3:
                    continue
                for l2 in ladders_at[c2]:
                    if l2.k != l1.k or l2.vertices & l1.vertices or c1 in l2.vertices or c2 in l1.vertices:
                        continue
                    rest1 = [u for u in _nbrs(g, c1) if u not in (l1.x, c2)]
                    rest2 = [u for u in _nbrs(g, c2) if u not in (l2.x, c1)]
                    if len(rest1) != 1 or len(rest2) != 1:
                        continue
                    end, c3 = rest1[0], rest2[0]
                    used = l1.vertices | l2.vertices | {c1, c2}
                    for cyc in _cycle_paths(g, c3, end, used, max_degree):
                        verts = used | set(cyc)
                        if _ports_ok(g, cyc, verts):
                            cands[verts] = _NodeCand(frozenset(verts), l1.k, tuple(cyc))
    return list(cands.values())


def _cycle_paths(g, start, end, used, max_degree):
    """Simple paths start..end (ports of the cycle) of 1..max_degree vertices avoiding ``used``."""
    if start in used or end in used:
        return
    stack = [[start]]
    while stack:
        path = stack.pop()
        if path[-1] == end:
            yield path
            continue
        if len(path) >= max_degree:
            continue
        for u in _nbrs(g, path[-1]):
            if u not in used and u not in path:
                stack.append(path + [u])


def _ports_ok(g, ports, verts) -> bool:
    for i, p in enumerate(ports):
        nb = _nbrs(g, p)
        if len(nb) != 3:
            return False
        inside = [u for u in nb if u in verts]
        if len(inside) != 2:
            return False
    # chordlessness between ports: consecutive ports adjacent, non-consecutive not
    for i in range(len(ports)):
        for j in range(i + 2, len(ports)):
            if g.has_edge(ports[i], ports[j]):
                return False
    return True


def _select(cands, key_size):
    chosen = []
    taken = set()
    overlaps = 0
    for c in sorted(cands, key=lambda c: (-len(c.vertices), min(c.vertices))):
        if c.vertices & taken:
            overlaps += 1
            continue
        chosen.append(c)
        taken |= c.vertices
    return chosen, overlaps


def decode_ab(gp: LabeledGraph, max_degree: int = 3) -> Tuple[MultiGraph, DecodeMap]:
    """Detect node gadgets, then edge gadgets; everything else is malformed."""
    dm = DecodeMap()
    ladders_at: Dict[int, List[_Ladder]] = {}
    for x in gp.sorted_vertices():
        for lad in _parse_ladders_at(gp, x):
            ladders_at.setdefault(lad.attach, []).append(lad)
    nodes, ov = _select(_node_candidates(gp, ladders_at, max_degree), True)
    if ov:
        dm.diagnostics.append(f"{ov} overlapping node-gadget candidates discarded by priority")
    port_owner: Dict[int, int] = {}
    for c in nodes:
        u = min(c.vertices)
        dm.nodes[u] = tuple(sorted(c.vertices))
        dm.node_labels[u] = c.label
        for x in c.vertices:
            dm.owner[x] = ("node", u)
        for p in c.ports:
            port_owner[p] = u
    taken = set(dm.owner)
    ecands = {}
    for a1 in sorted(ladders_at):
        if a1 in taken or len(_nbrs(gp, a1)) != 3:
            continue
        for l1 in ladders_at[a1]:
            if l1.vertices & taken:
                continue
            for a2 in _nbrs(gp, a1):
                if a2 <= a1 or a2 == l1.x or a2 in taken or a2 not in ladders_at or len(_nbrs(gp, a2)) != 3:
                    continue
                for l2 in ladders_at[a2]:
                    if l2.vertices & taken or l2.vertices & l1.vertices or a1 in l2.vertices or a2 in l1.vertices:
                        continue
                    p1 = [u for u in _nbrs(gp, a1) if u not in (l1.x, a2)]
                    p2 = [u for u in _nbrs(gp, a2) if u not in (l2.x, a1)]
                    if len(p1) != 1 or len(p2) != 1 or p1[0] not in port_owner or p2[0] not in port_owner:
                        continue
                    verts = frozenset(l1.vertices | l2.vertices | {a1, a2})
                    ecands[verts] = _EdgeCand(verts, (p1[0], p2[0]), (l1.k, l2.k))
    edges, ov = _select(list(ecands.values()), True)
    if ov:
        dm.diagnostics.append(f"{ov} overlapping edge-gadget candidates discarded by priority")
    covered = set()
    idx = 0
    for c in sorted(edges, key=lambda c: min(c.vertices)):
        u1, u2 = port_owner[c.ends[0]], port_owner[c.ends[1]]
        l1, l2 = c.labels
        if u1 > u2:
            u1, u2, l1, l2 = u2, u1, l2, l1
        dm.edges[idx] = tuple(sorted(c.vertices))
        dm.edge_ends[idx] = (u1, u2)
        dm.edge_labels[idx] = (l1, l2)
        for x in c.vertices:
            dm.owner[x] = ("edge", idx)
        for p in c.ends:
            for a in _nbrs(gp, p):
                if a in c.vertices:
                    covered.add(ekey(p, a))
        idx += 1
    malformed = [v for v in gp.sorted_vertices() if v not in dm.owner]
    for v in malformed:
        dm.owner[v] = ("malformed", v)
        dm.nodes[v] = (v,)
        dm.node_labels[v] = BOT
    dm.malformed_vertices = tuple(malformed)
    bad_edges = []
    for e in gp.sorted_edges():
        a, b = e
        ka, xa = dm.owner[a]
        kb, xb = dm.owner[b]
        if (ka, xa) == (kb, xb) or e in covered:
            continue
        if ka == "edge" or kb == "edge":
            dm.diagnostics.append(f"edge {a}-{b} leaves an edge gadget; ignored")
            continue
        u1, u2 = sorted((xa, xb))
        dm.edges[idx] = (a, b) if ka == "malformed" and kb == "malformed" else ()
        dm.edge_ends[idx] = (u1, u2)
        dm.edge_labels[idx] = BOT
        bad_edges.append(e)
        idx += 1
    dm.malformed_edges = tuple(bad_edges)
    return dm.graph(), dm


# ---------------------------------------------------------------- local decoding

@dataclass
class LocalDecode:
    member: bool
    kind: str
    vertex: Optional[int] = None
    neighborhood: Optional[CenteredGraph] = None
    representative: bool = False
    paths: Dict[int, List[int]] = field(default_factory=dict)


def _shortest_paths(g, src, targets) -> Dict[int, List[int]]:
    parent = {src: None}
    q = deque([src])
    while q:
        x = q.popleft()
        for y in g.neighbors(x):
            if y not in parent:
                parent[y] = x
                q.append(y)
    out = {}
    for t in targets:
        if t not in parent:
            continue
        path = [t]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        out[t] = path[::-1]
    return out


def local_decode(gp: LabeledGraph, v: int, lam: int, ids: Optional[Dict[int, int]] = None, max_degree: int = 3) -> LocalDecode:
    """Decode the radius-lam ball around v; report v's decoded vertex and its radius-1 view."""
    ids = ids or {x: x for x in gp.vertices}
    b = ball(gp, v, lam)
    mg, dm = decode_ab(b.graph, max_degree)
    kind, x = dm.owner[v]
    if kind != "node":
        return LocalDecode(False, kind)
    nb = ball(mg, x, 1)
    gadget = dm.nodes[x]
    rep = min(gadget, key=lambda y: ids[y])
    reps = {}
    for w in nb.graph.vertices:
        if w != x:
            reps[w] = min(dm.nodes[w], key=lambda y: ids[y])
    paths = _shortest_paths(b.graph, v, reps.values())
    return LocalDecode(True, kind, x, nb, v == rep, {w: paths[r] for w, r in reps.items() if r in paths})


# ---------------------------------------------------------------- problem B

_DECODE_CACHE: Dict[Tuple, Tuple[MultiGraph, DecodeMap]] = {}


def _cached_decode(g: LabeledGraph, max_degree: int):
    key = (g.vertices, g.edges, max_degree)
    hit = _DECODE_CACHE.get(key)
    if hit is None:
        if len(_DECODE_CACHE) > 256:
            _DECODE_CACHE.clear()
        hit = decode_ab(LabeledGraph(g.vertices, g.edges), max_degree)
        _DECODE_CACHE[key] = hit
    return hit


def decoded_outputs(dm: DecodeMap, out: Dict[int, Any], vertices) -> Optional[Dict[int, Any]]:
    """Output of each decoded vertex, or None when some node gadget is not uniformly labeled."""
    res = {}
    for u in vertices:
        vals = {out.get(y) for y in dm.nodes[u]}
        if len(vals) != 1:
            return None
        res[u] = vals.pop()
    return res


def problem_b_membership(problem_a: LCLProblem, ball_b: CenteredGraph, max_degree: int = 3) -> bool:
    """Membership of a labeled radius-r_B ball in the constraint of the encoded problem."""
    g = ball_b.graph
    mg, dm = _cached_decode(g, max_degree)
    kind, u = dm.owner[ball_b.center]
    if kind == "edge":
        return True
    sub = ball(mg, u, problem_a.radius)
    outs = decoded_outputs(dm, g.node_labels, sub.graph.vertices)
    if outs is None:
        return False
    if problem_a.input_alphabet is not None:
        labels = {x: (mg.label(x), outs[x]) for x in sub.graph.vertices}
    else:
        labels = outs
    labeled = MultiGraph(sub.graph.vertices, sub.graph.edges, labels, sub.graph.edge_labels)
    return problem_a.accepts(CenteredGraph(labeled, u, problem_a.radius))


def problem_b(problem_a: LCLProblem, max_label: int) -> Tuple[LCLProblem, FrameworkConstants]:
    fc = framework_constants(max_label, problem_a.max_degree)
    out_alpha = None if problem_a.output_alphabet is None else frozenset(problem_a.output_alphabet) | {BOT}
    pb = LCLProblem(
        3,
        None,
        out_alpha,
        fc.r_b(problem_a.radius),
        lambda cg: problem_b_membership(problem_a, cg, problem_a.max_degree),
        name=f"B[{problem_a.name}]",
    )
    return pb, fc


# ---------------------------------------------------------------- lifts

def lift_out_a_to_b(sigma_a: Dict[int, Any], dm: DecodeMap) -> Dict[int, Any]:
    """Gadget and malformed vertices copy their decoded vertex's output; edge gadgets get BOT."""
    out = {}
    for v, (kind, x) in dm.owner.items():
        out[v] = BOT if kind == "edge" else sigma_a[x]
    return out


def representative(dm: DecodeMap, u: int, ids: Optional[Dict[int, int]] = None) -> int:
    if ids is None:
        return min(dm.nodes[u])
    return min(dm.nodes[u], key=lambda y: ids[y])


def lift_out_b_to_a(sigma_b: Dict[int, Any], dm: DecodeMap, ids: Optional[Dict[int, int]] = None) -> Dict[int, Any]:
    return {u: sigma_b[representative(dm, u, ids)] for u in dm.nodes}


# ---------------------------------------------------------------- ids

def cantor(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def provenance_id(tag: tuple, ids: Dict[int, int]) -> int:
    """Deterministic id from a gadget tag, monotone in the within-gadget index."""
    if tag[0] == "node":
        return cantor(cantor(0, ids[tag[1]]), tag[2])
    if tag[0] == "edge":
        return cantor(cantor(1, cantor(ids[tag[1]], ids[tag[2]])), tag[3])
    raise ValueError(f"unknown tag {tag!r}")
