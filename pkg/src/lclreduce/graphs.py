"""Graph carriers, balls, port-numbering views, gadget distance and isomorphism."""
from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

Edge = Tuple[int, int]


def ekey(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


def edge_str(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


def parse_edge_str(s: str) -> Edge:
    a, b = s.split("-")
    return ekey(int(a), int(b))


class _Infinity:
    """Tagged sentinel for unreachable gadget distances."""

    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True


INF = _Infinity()


class LabeledGraph:
    """Simple undirected graph with optional node labels, edge labels and half-unit weights.

    Weights are stored as integers counting halves, so 1 means 0.5.
    Treat instances as immutable.
    """

    __slots__ = ("vertices", "edges", "node_labels", "edge_labels", "edge_weights", "_adj")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[Sequence[int]] = (),
        node_labels: Optional[Dict[int, Any]] = None,
        edge_labels: Optional[Dict[Edge, Any]] = None,
        edge_weights: Optional[Dict[Edge, int]] = None,
    ):
        vs = frozenset(vertices)
        adj: Dict[int, set] = {v: set() for v in vs}
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge {u}-{v} has an endpoint outside the vertex set")
            k = ekey(u, v)
            if k in es:
                raise ValueError(f"duplicate edge {u}-{v}")
            es.add(k)
            adj[u].add(v)
            adj[v].add(u)
        self.vertices = vs
        self.edges = frozenset(es)
        self._adj = {v: tuple(sorted(n)) for v, n in adj.items()}
        self.node_labels = dict(node_labels or {})
        for v in self.node_labels:
            if v not in adj:
                raise ValueError(f"label on unknown vertex {v}")
        self.edge_labels = {}
        for e, lab in (edge_labels or {}).items():
            k = ekey(*e)
            if k not in es:
                raise ValueError(f"label on unknown edge {e}")
            self.edge_labels[k] = lab
        self.edge_weights = {}
        for e, w in (edge_weights or {}).items():
            k = ekey(*e)
            if k not in es:
                raise ValueError(f"weight on unknown edge {e}")
            if w not in (0, 1):
                raise ValueError("weights must be 0 or 1 half-units")
            self.edge_weights[k] = w

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertices: Iterable[int] = (), **kw) -> "LabeledGraph":
        edges = [tuple(e) for e in edges]
        vs = set(vertices)
        for u, v in edges:
            vs.add(u)
            vs.add(v)
        return cls(vs, edges, **kw)

    def __repr__(self):
        return f"LabeledGraph(n={len(self.vertices)}, m={len(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.node_labels == other.node_labels
            and self.edge_labels == other.edge_labels
            and self.edge_weights == other.edge_weights
        )

    __hash__ = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def incident(self, v: int):
        """(neighbor, edge-id) pairs; the edge-id of a simple edge is its sorted pair."""
        return [(u, ekey(v, u)) for u in self._adj[v]]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ekey(u, v) in self.edges

    def max_degree(self) -> int:
        return max((len(n) for n in self._adj.values()), default=0)

    def is_regular(self, d: int) -> bool:
        return all(len(n) == d for n in self._adj.values())

    def label(self, v: int):
        return self.node_labels.get(v)

    def edge_label(self, e: Edge):
        return self.edge_labels.get(ekey(*e))

    def weight(self, u: int, v: int) -> Fraction:
        return Fraction(self.edge_weights[ekey(u, v)], 2)

    def sorted_vertices(self) -> List[int]:
        return sorted(self.vertices)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def with_labels(self, node_labels=None, edge_labels=None, edge_weights=None) -> "LabeledGraph":
        return LabeledGraph(
            self.vertices,
            self.edges,
            self.node_labels if node_labels is None else node_labels,
            self.edge_labels if edge_labels is None else edge_labels,
            self.edge_weights if edge_weights is None else edge_weights,
        )

    def subgraph(self, vertices: Iterable[int], edges: Optional[Iterable[Edge]] = None) -> "LabeledGraph":
        vs = frozenset(vertices)
        if edges is None:
            es = [e for e in self.edges if e[0] in vs and e[1] in vs]
        else:
            es = [ekey(*e) for e in edges]
        es_set = set(es)
        return LabeledGraph(
            vs,
            es,
            {v: l for v, l in self.node_labels.items() if v in vs},
            {e: l for e, l in self.edge_labels.items() if e in es_set},
            {e: w for e, w in self.edge_weights.items() if e in es_set},
        )

    def relabel(self, mapping: Dict[int, int]) -> "LabeledGraph":
        return LabeledGraph(
            [mapping[v] for v in self.vertices],
            [(mapping[u], mapping[v]) for u, v in self.edges],
            {mapping[v]: l for v, l in self.node_labels.items()},
            {ekey(mapping[u], mapping[v]): l for (u, v), l in self.edge_labels.items()},
            {ekey(mapping[u], mapping[v]): w for (u, v), w in self.edge_weights.items()},
        )


class MultiGraph:
    """Undirected graph permitting parallel edges and loops.

    Edges are addressed by their index in ``edges``; ``edge_labels`` maps index to label.
    """

    __slots__ = ("vertices", "edges", "node_labels", "edge_labels", "_inc")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[Sequence[int]] = (),
        node_labels: Optional[Dict[int, Any]] = None,
        edge_labels: Optional[Dict[int, Any]] = None,
    ):
        self.vertices = frozenset(vertices)
        self.edges: Tuple[Edge, ...] = tuple(ekey(u, v) for u, v in edges)
        inc: Dict[int, list] = {v: [] for v in self.vertices}
        for i, (u, v) in enumerate(self.edges):
            if u not in inc or v not in inc:
                raise ValueError(f"edge {u}-{v} has an endpoint outside the vertex set")
            inc[u].append((v, i))
            if u != v:
                inc[v].append((u, i))
            else:
                inc[u].append((u, i))
        self._inc = {v: tuple(sorted(l)) for v, l in inc.items()}
        self.node_labels = dict(node_labels or {})
        self.edge_labels = dict(edge_labels or {})

    def __repr__(self):
        return f"MultiGraph(n={len(self.vertices)}, m={len(self.edges)})"

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int):
        return self._inc[v]

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted({u for u, _ in self._inc[v]}))

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def label(self, v: int):
        return self.node_labels.get(v)

    def edge_label(self, i: int):
        return self.edge_labels.get(i)

    def is_simple(self) -> bool:
        return all(u != v for u, v in self.edges) and len(set(self.edges)) == len(self.edges)

    def to_simple(self) -> LabeledGraph:
        if not self.is_simple():
            raise ValueError("multigraph has loops or parallel edges")
        return LabeledGraph(
            self.vertices,
            self.edges,
            self.node_labels,
            {self.edges[i]: l for i, l in self.edge_labels.items()},
        )

    @classmethod
    def from_simple(cls, g: LabeledGraph) -> "MultiGraph":
        es = g.sorted_edges()
        return cls(g.vertices, es, g.node_labels, {i: g.edge_labels[e] for i, e in enumerate(es) if e in g.edge_labels})

    def subgraph(self, vertices: Iterable[int], edge_ids: Optional[Iterable[int]] = None) -> "MultiGraph":
        vs = frozenset(vertices)
        if edge_ids is None:
            ids = [i for i, (u, v) in enumerate(self.edges) if u in vs and v in vs]
        else:
            ids = sorted(edge_ids)
        return MultiGraph(
            vs,
            [self.edges[i] for i in ids],
            {v: l for v, l in self.node_labels.items() if v in vs},
            {j: self.edge_labels[i] for j, i in enumerate(ids) if i in self.edge_labels},
        )


AnyGraph = Union[LabeledGraph, MultiGraph]


@dataclass(frozen=True)
class CenteredGraph:
    graph: AnyGraph
    center: int
    radius: Any

    def is_ball(self) -> bool:
        """Check the defining invariant: the graph equals its own ball around the center."""
        b = ball(self.graph, self.center, self.radius)
        return b.graph.vertices == self.graph.vertices and sorted(_edge_list(b.graph)) == sorted(_edge_list(self.graph))


def _edge_list(g: AnyGraph):
    return list(g.edges)


def bfs_distances(g: AnyGraph, v: int, limit: Optional[int] = None) -> Dict[int, int]:
    if v not in g.vertices:
        raise KeyError(f"unknown vertex {v}")
    dist = {v: 0}
    q = deque([v])
    while q:
        x = q.popleft()
        d = dist[x]
        if limit is not None and d >= limit:
            continue
        for y, _ in g.incident(x):
            if y not in dist:
                dist[y] = d + 1
                q.append(y)
    return dist


def ball(g: AnyGraph, v: int, r: int) -> CenteredGraph:
    """Radius-r ball: vertices within distance r, edges with an endpoint closer than r."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    dist = bfs_distances(g, v, r)
    if isinstance(g, LabeledGraph):
        es = [e for x, d in dist.items() if d < r for _, e in g.incident(x)]
        return CenteredGraph(g.subgraph(dist, set(es)), v, r)
    ids = {i for x, d in dist.items() if d < r for _, i in g.incident(x)}
    return CenteredGraph(g.subgraph(dist, ids), v, r)


def diameter(g: AnyGraph) -> int:
    best = 0
    for v in g.vertices:
        d = bfs_distances(g, v)
        if len(d) != g.n:
            raise ValueError("graph is disconnected")
        best = max(best, max(d.values()))
    return best


def connected_components(g: AnyGraph) -> List[List[int]]:
    seen = set()
    comps = []
    for v in sorted(g.vertices):
        if v in seen:
            continue
        comp = list(bfs_distances(g, v))
        seen.update(comp)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------- rooted trees

def _enc(x) -> bytes:
    if x is None:
        return b"N"
    if isinstance(x, TNode):
        return b"T" + x.digest
    if isinstance(x, bool):
        return b"B1" if x else b"B0"
    if isinstance(x, int):
        return b"i" + str(x).encode() + b";"
    if isinstance(x, str):
        s = x.encode()
        return b"s" + str(len(s)).encode() + b":" + s
    if isinstance(x, Fraction):
        return b"f" + str(x).encode() + b";"
    if isinstance(x, tuple):
        return b"(" + b"".join(_enc(y) for y in x) + b")"
    if isinstance(x, frozenset):
        return b"{" + b"".join(sorted(_enc(y) for y in x)) + b"}"
    if isinstance(x, RootedView):
        return b"V" + x.root.digest + str(x.radius).encode() + b";"
    raise TypeError(f"unsupported label type {type(x).__name__}")


def _h(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=16).digest()


class TNode:
    """Hash-consed rooted tree node; children are (edge_label, TNode) pairs in canonical order."""

    __slots__ = ("label", "children", "digest", "height", "_size")

    def __init__(self, label, children, digest, height):
        self.label = label
        self.children = children
        self.digest = digest
        self.height = height
        self._size = None

    def __repr__(self):
        return f"TNode({self.label!r}, deg={len(self.children)}, h={self.height})"

    def size(self) -> int:
        if self._size is None:
            self._size = 1 + sum(c.size() for _, c in self.children)
        return self._size


_INTERN: Dict[bytes, TNode] = {}


def tnode(label, children: Iterable[Tuple[Any, TNode]] = ()) -> TNode:
    """Build (or fetch) the interned node with this label and children multiset."""
    keyed = []
    for el, c in children:
        keyed.append((_h(_enc(el) + c.digest), el, c))
    keyed.sort(key=lambda t: t[0])
    digest = _h(b"<" + _enc(label) + b"|" + b"".join(k for k, _, _ in keyed) + b">")
    node = _INTERN.get(digest)
    if node is None:
        height = 1 + max(c.height for _, _, c in keyed) if keyed else 0
        node = TNode(label, tuple((el, c) for _, el, c in keyed), digest, height)
        _INTERN[digest] = node
    return node


_TRUNC: Dict[Tuple[bytes, int], TNode] = {}


def truncate(node: TNode, depth: int) -> TNode:
    if depth < 0:
        raise ValueError("negative depth")
    if node.height <= depth:
        return node
    key = (node.digest, depth)
    out = _TRUNC.get(key)
    if out is None:
        if depth == 0:
            out = tnode(node.label)
        else:
            out = tnode(node.label, [(el, truncate(c, depth - 1)) for el, c in node.children])
        _TRUNC[key] = out
    return out


@dataclass(frozen=True)
class RootedView:
    root: TNode
    radius: int

    @property
    def tree(self) -> TNode:
        return self.root

    @property
    def label(self):
        return self.root.label

    def canonical_key(self) -> str:
        return self.root.digest.hex()

    def canonical_string(self, limit: int = 100000) -> str:
        return canonical_string(self.root, limit)

    def size(self) -> int:
        return self.root.size()

    def depth(self) -> int:
        return self.root.height

    def truncated(self, depth: int) -> "RootedView":
        return RootedView(truncate(self.root, depth), min(depth, self.radius))


def canonical_string(node: TNode, limit: int = 100000) -> str:
    """Nested string form with children sorted by their own strings; only for small trees."""
    if node.size() > limit:
        raise ValueError(f"tree has {node.size()} nodes, above the string limit {limit}")
    memo: Dict[bytes, str] = {}

    def go(n: TNode) -> str:
        s = memo.get(n.digest)
        if s is None:
            parts = sorted(("" if el is None else f"{el!r}:") + go(c) for el, c in n.children)
            s = f"{n.label!r}(" + ",".join(parts) + ")"
            memo[n.digest] = s
        return s

    return go(node)


def tree_from_nested(spec) -> TNode:
    """Build a tree from (label, [children...]) with children as nested specs or (edge_label, spec)."""
    label, kids = spec
    children = []
    for k in kids:
        if isinstance(k, tuple) and len(k) == 2 and isinstance(k[1], tuple) and len(k[1]) == 2 and isinstance(k[1][1], list):
            children.append((k[0], tree_from_nested(k[1])))
        else:
            children.append((None, tree_from_nested(k)))
    return tnode(label, children)


def walker(g: LabeledGraph, labels, elabels):
    """Memoized builder: walk(x, prev, depth) is the subtree of walks entering x from prev."""
    memo: Dict[Tuple[int, Any, int], TNode] = {}

    def walk(x: int, prev, d: int) -> TNode:
        key = (x, prev, d)
        node = memo.get(key)
        if node is None:
            kids = []
            if d > 0:
                for y in g.neighbors(x):
                    if y != prev:
                        kids.append((elabels.get(ekey(x, y)), walk(y, x, d - 1)))
            node = tnode(labels.get(x), kids)
            memo[key] = node
        return node

    return walk


def pn_view(
    g: LabeledGraph,
    v: int,
    r: int,
    labels: Optional[Dict[int, Any]] = None,
    edge_labels: Optional[Dict[Edge, Any]] = None,
) -> RootedView:
    """Tree of non-backtracking walks of length at most r from v, labeled by walk endpoints."""
    if v not in g.vertices:
        raise KeyError(f"unknown vertex {v}")
    if r < 0:
        raise ValueError("radius must be non-negative")
    labels = g.node_labels if labels is None else labels
    elabels = g.edge_labels if edge_labels is None else edge_labels
    return RootedView(walker(g, labels, elabels)(v, None, r), r)


def pn_view_all(g: LabeledGraph, r: int, labels=None, edge_labels=None) -> Dict[int, RootedView]:
    """Views of every vertex, sharing one walk memo."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    labels = g.node_labels if labels is None else labels
    elabels = g.edge_labels if edge_labels is None else edge_labels
    walk = walker(g, labels, elabels)
    return {v: RootedView(walk(v, None, r), r) for v in g.sorted_vertices()}


def pn_subview(g: LabeledGraph, v: int, prev: int, depth: int, labels=None) -> TNode:
    """Subtree of the walk tree hanging below a step prev -> v, of the given depth."""
    labels = g.node_labels if labels is None else labels
    memo: Dict[Tuple[int, int, int], TNode] = {}

    def walk(x, p, d):
        key = (x, p, d)
        node = memo.get(key)
        if node is None:
            kids = [(g.edge_labels.get(ekey(x, y)), walk(y, x, d - 1)) for y in g.neighbors(x) if y != p] if d > 0 else []
            node = tnode(labels.get(x), kids)
            memo[key] = node
        return node

    return walk(v, prev, depth)


def rooted_tree_iso(a: RootedView, b: RootedView) -> bool:
    return a.root.digest == b.root.digest


# ----------------------------------------------------------- gadget distance

def gdist_all(g: LabeledGraph, src: int) -> Dict[int, int]:
    """Gadget distances from src in half-units (0-1 BFS)."""
    if src not in g.vertices:
        raise KeyError(f"unknown vertex {src}")
    dist = {src: 0}
    dq = deque([src])
    while dq:
        x = dq.popleft()
        d = dist[x]
        for y in g.neighbors(x):
            w = g.edge_weights.get(ekey(x, y))
            if w is None:
                raise ValueError(f"edge {x}-{y} has no weight")
            nd = d + w
            if y not in dist or nd < dist[y]:
                dist[y] = nd
                if w == 0:
                    dq.appendleft(y)
                else:
                    dq.append(y)
    return dist


def gdist(g: LabeledGraph, u: int, v: int):
    d = gdist_all(g, u)
    if v not in g.vertices:
        raise KeyError(f"unknown vertex {v}")
    if v not in d:
        return INF
    return Fraction(d[v], 2)


def gball(g: LabeledGraph, v: int, r) -> CenteredGraph:
    """Induced subgraph on the vertices at gadget distance at most r."""
    limit = Fraction(r) * 2
    d = gdist_all(g, v)
    vs = [x for x, dx in d.items() if dx <= limit]
    return CenteredGraph(g.subgraph(vs), v, r)


# ---------------------------------------------------------------- isomorphism

def _pair_form(g: AnyGraph):
    """Per-vertex label and neighbor -> edge-label multiset, shared by simple and multigraphs."""
    labs = {v: _enc(g.label(v)) for v in g.vertices}
    nb: Dict[int, Dict[int, list]] = {v: {} for v in g.vertices}
    if isinstance(g, LabeledGraph):
        for e in g.edges:
            u, v = e
            el = _enc(g.edge_labels.get(e))
            nb[u].setdefault(v, []).append(el)
            nb[v].setdefault(u, []).append(el)
    else:
        for i, (u, v) in enumerate(g.edges):
            el = _enc(g.edge_labels.get(i))
            nb[u].setdefault(v, []).append(el)
            if u != v:
                nb[v].setdefault(u, []).append(el)
    return labs, {v: {u: tuple(sorted(l)) for u, l in d.items()} for v, d in nb.items()}


def _refine(n1, nb, colors):
    """Colour refinement on the disjoint union; vertices < n1 belong to the first graph.

    Returns the stable colouring, or None as soon as the two sides' colour histograms differ.
    """
    n = len(colors)
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted([(m, colors[u]) for m, u in nb[v]]))) for v in range(n)]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        h = [0] * len(table)
        for v in range(n1):
            h[new[v]] += 1
        for v in range(n1, n):
            h[new[v]] -= 1
        if any(h):
            return None
        if len(table) == k:
            return new
        colors = new
        k = len(table)


def find_isomorphism(
    g1: AnyGraph, g2: AnyGraph, fixed: Sequence[Tuple[int, int]] = ()
) -> Optional[Dict[int, int]]:
    """Label-preserving isomorphism g1 -> g2 respecting the fixed pairs, or None.

    Individualisation-refinement with backtracking; exact on any input.
    """
    if g1.n != g2.n or g1.m != g2.m:
        return None
    for a, b in fixed:
        if a not in g1.vertices or b not in g2.vertices:
            return None
    l1, nb1 = _pair_form(g1)
    l2, nb2 = _pair_form(g2)
    order1 = sorted(g1.vertices)
    order2 = sorted(g2.vertices)
    n1 = len(order1)
    idx = {(1, v): i for i, v in enumerate(order1)}
    idx.update({(2, v): n1 + i for i, v in enumerate(order2)})
    names = order1 + order2
    mults = {}
    nb = []
    for side, order, d in ((1, order1, nb1), (2, order2, nb2)):
        for v in order:
            nb.append([(mults.setdefault(m, len(mults)), idx[(side, u)]) for u, m in d[v].items()])
    base = [(l1[v], -1) for v in order1] + [(l2[v], -1) for v in order2]
    for i, (a, b) in enumerate(fixed):
        base[idx[(1, a)]] = (l1[a], i)
        base[idx[(2, b)]] = (l2[b], i)
    table = {s: i for i, s in enumerate(sorted(set(base)))}
    start = [table[s] for s in base]
    total = len(names)

    def search(colors):
        colors = _refine(n1, nb, colors)
        if colors is None:
            return None
        cls: Dict[int, list] = {}
        for i in range(n1):
            cls.setdefault(colors[i], []).append(i)
        multi = [c for c, x in cls.items() if len(x) > 1]
        if not multi:
            where = {colors[i]: i for i in range(n1, total)}
            mapping = {names[i]: names[where[colors[i]]] for i in range(n1)}
            for v, d in nb1.items():
                for u, m in d.items():
                    if nb2[mapping[v]].get(mapping[u]) != m:
                        return None
            return mapping
        c = min(multi, key=lambda c: (len(cls[c]), c))
        v = cls[c][0]
        fresh = max(colors) + 1
        for w in range(n1, total):
            if colors[w] != c:
                continue
            trial = list(colors)
            trial[v] = fresh
            trial[w] = fresh
            res = search(trial)
            if res is not None:
                return res
        return None

    return search(start)


def _refine_one(nb, colors):
    n = len(colors)
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted([(m, colors[u]) for m, u in nb[v]]))) for v in range(n)]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == k:
            return new
        colors = new
        k = len(table)


def canonical_order(g: LabeledGraph) -> List[int]:
    """Vertices in an isomorphism-invariant order (smallest certificate over all refinement leaves).

    Isomorphic labeled graphs get orders that the isomorphism maps onto each other.
    Exponential on highly symmetric inputs; meant for small graphs.
    """
    labs, nbd = _pair_form(g)
    order = g.sorted_vertices()
    idx = {v: i for i, v in enumerate(order)}
    mults: Dict[tuple, int] = {}
    for m in sorted({m for d in nbd.values() for m in d.values()}):
        mults[m] = len(mults)
    nb = [[(mults[m], idx[u]) for u, m in nbd[v].items()] for v in order]
    table = {s: i for i, s in enumerate(sorted(set(labs.values())))}
    best: List[Any] = [None, None]

    def cert(perm: List[int]):
        pos = {v: i for i, v in enumerate(perm)}
        edges = sorted(
            (min(pos[v], pos[u]), max(pos[v], pos[u]), m)
            for v in range(len(order)) for m, u in nb[v] if v <= u
        )
        return (tuple(labs[order[v]] for v in perm), tuple(edges))

    def search(colors):
        colors = _refine_one(nb, colors)
        cls: Dict[int, list] = {}
        for i, c in enumerate(colors):
            cls.setdefault(c, []).append(i)
        multi = [c for c, x in cls.items() if len(x) > 1]
        if not multi:
            perm = sorted(range(len(colors)), key=lambda i: colors[i])
            c = cert(perm)
            if best[0] is None or c < best[0]:
                best[0], best[1] = c, perm
            return
        c = min(multi, key=lambda c: (len(cls[c]), c))
        fresh = max(colors) + 1
        for v in cls[c]:
            trial = list(colors)
            trial[v] = fresh
            search(trial)

    if order:
        search([table[labs[v]] for v in order])
        return [order[i] for i in best[1]]
    return []


def centered_iso(a: CenteredGraph, b: CenteredGraph) -> bool:
    return find_isomorphism(a.graph, b.graph, [(a.center, b.center)]) is not None


def graph_iso(a: AnyGraph, b: AnyGraph) -> bool:
    return find_isomorphism(a, b) is not None


def triangle_vertices(g: AnyGraph) -> set:
    """Vertices lying on some 3-cycle."""
    out = set()
    for v in g.vertices:
        nbrs = [u for u in g.neighbors(v) if u != v]
        nset = set(nbrs)
        for a in nbrs:
            if any(b in nset and b != a for b in g.neighbors(a)):
                out.add(v)
                break
    return out


# ---------------------------------------------------------------- power colorings

def within(g: AnyGraph, v: int, k: int) -> set:
    return set(bfs_distances(g, v, k))


def power_coloring(g: AnyGraph, k: int, order: Optional[Sequence[int]] = None) -> Dict[int, int]:
    """Greedy colouring of the k-th power graph with colours 1, 2, ... (first fit)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    col: Dict[int, int] = {}
    for v in (order if order is not None else sorted(g.vertices)):
        used = {col[u] for u in within(g, v, k) if u in col}
        c = 1
        while c in used:
            c += 1
        col[v] = c
    return col


def is_distance_coloring(g: AnyGraph, col: Dict[int, Any], k: int) -> bool:
    for v in g.vertices:
        if v not in col:
            return False
        for u in within(g, v, k):
            if u != v and col.get(u) == col[v]:
                return False
    return True
