"""JSON and DOT serialization for graphs, labelings, decode maps and half-edge labelings."""
from __future__ import annotations

import json
from typing import Any, Dict, Optional, Tuple

from .graphs import CenteredGraph, Edge, LabeledGraph, MultiGraph, RootedView, TNode, edge_str, ekey, parse_edge_str, tnode, tree_from_nested


def to_jsonable(x):
    if isinstance(x, tuple):
        return [to_jsonable(y) for y in x]
    if isinstance(x, (list,)):
        return [to_jsonable(y) for y in x]
    if isinstance(x, frozenset):
        return sorted((to_jsonable(y) for y in x), key=repr)
    return x


def from_jsonable(x):
    """Lists become tuples so labels stay hashable."""
    if isinstance(x, list):
        return tuple(from_jsonable(y) for y in x)
    return x


def _vkey(s: str) -> int:
    return int(s)


def graph_to_json(g: LabeledGraph) -> dict:
    return {
        "vertices": g.sorted_vertices(),
        "edges": [list(e) for e in g.sorted_edges()],
        "node_labels": {str(v): to_jsonable(g.node_labels[v]) for v in g.sorted_vertices() if v in g.node_labels},
        "edge_labels": {edge_str(e): to_jsonable(g.edge_labels[e]) for e in g.sorted_edges() if e in g.edge_labels},
        "edge_weights": {edge_str(e): g.edge_weights[e] for e in g.sorted_edges() if e in g.edge_weights},
    }


def graph_from_json(d: dict) -> LabeledGraph:
    if not isinstance(d, dict) or "edges" not in d:
        raise ValueError("graph JSON needs an 'edges' list")
    edges = []
    for e in d["edges"]:
        if isinstance(e, str):
            edges.append(parse_edge_str(e))
        elif isinstance(e, (list, tuple)) and len(e) == 2:
            edges.append((int(e[0]), int(e[1])))
        else:
            raise ValueError(f"bad edge entry {e!r}")
    vertices = [int(v) for v in d.get("vertices", [])]
    nl = {_vkey(k): from_jsonable(v) for k, v in d.get("node_labels", {}).items()}
    el = {parse_edge_str(k): from_jsonable(v) for k, v in d.get("edge_labels", {}).items()}
    ew = {}
    for k, w in d.get("edge_weights", {}).items():
        if w not in (0, 1):
            raise ValueError(f"edge weight for {k} must be 0 or 1 (half-units), got {w!r}")
        ew[parse_edge_str(k)] = w
    return LabeledGraph.from_edges(edges, vertices, node_labels=nl, edge_labels=el, edge_weights=ew)


def multigraph_to_json(g: MultiGraph) -> dict:
    return {
        "vertices": sorted(g.vertices),
        "edges": [list(e) for e in g.edges],
        "node_labels": {str(v): to_jsonable(g.node_labels[v]) for v in sorted(g.vertices) if v in g.node_labels},
        "edge_labels": {str(i): to_jsonable(l) for i, l in sorted(g.edge_labels.items())},
    }


def labeling_to_json(out: Dict[int, Any]) -> dict:
    return {str(v): to_jsonable(out[v]) for v in sorted(out)}


def labeling_from_json(d: dict) -> Dict[int, Any]:
    if not isinstance(d, dict):
        raise ValueError("labeling JSON must be an object")
    return {int(k): from_jsonable(v) for k, v in d.items()}


def load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def dump_json(obj, path: Optional[str] = None) -> str:
    text = json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


# ---------------------------------------------------------------- problems

def _nested(x):
    """JSON [label, [children]] -> the tuple form tree_from_nested expects."""
    label, kids = x
    out = []
    for k in kids:
        if isinstance(k, dict):
            out.append((from_jsonable(k["edge"]), _nested(k["child"])))
        else:
            out.append(_nested(k))
    return (from_jsonable(label), out)


def problem_from_json(d: dict):
    """Problem document: {"formalism": "lcl"|"pn"|"re", ...}.

    Either {"builtin": name, "params": {...}} or explicit constraints:
    lcl "accepted": [{"graph": graph-json, "center": v}], pn "accepted": [[label, [child...]]],
    re "node_constraint" / "edge_constraint": lists of label lists.
    """
    from .fixtures import problem_by_name
    from .formalisms import LCLProblem, PNProblem, REProblem, multiset

    if not isinstance(d, dict) or "formalism" not in d:
        raise ValueError("problem JSON needs a 'formalism' tag")
    kind = d["formalism"]
    if "builtin" in d:
        return problem_by_name(d["builtin"], **d.get("params", {}))
    alph = lambda key: frozenset(from_jsonable(x) for x in d[key]) if d.get(key) is not None else None
    if kind == "lcl":
        acc = [CenteredGraph(graph_from_json(a["graph"]), int(a["center"]), int(d["radius"])) for a in d["accepted"]]
        return LCLProblem(int(d.get("max_degree", 3)), alph("input_alphabet"), alph("output_alphabet"),
                          int(d["radius"]), accepted=acc, name=d.get("name", ""))
    if kind == "pn":
        r = int(d["radius"])
        acc = [RootedView(tree_from_nested(_nested(a)), r) for a in d["accepted"]]
        return PNProblem(alph("output_alphabet"), r, accepted=acc, name=d.get("name", ""))
    if kind == "re":
        node = frozenset(multiset(*from_jsonable(m)) for m in d["node_constraint"])
        edge = frozenset(multiset(*from_jsonable(m)) for m in d["edge_constraint"])
        return REProblem(alph("alphabet"), node, edge, name=d.get("name", ""))
    raise ValueError(f"unknown formalism {kind!r}")


# ---------------------------------------------------------------- half-edge labelings

def _tree_table(root: TNode, table: Dict[str, list]) -> str:
    stack = [root]
    while stack:
        n = stack.pop()
        k = n.digest.hex()
        if k in table:
            continue
        table[k] = [to_jsonable(n.label), [[to_jsonable(el), c.digest.hex()] for el, c in n.children]]
        stack.extend(c for _, c in n.children if c.digest.hex() not in table)
    return root.digest.hex()


def hel_to_json(hel: Dict[Tuple[int, Edge], Any]) -> dict:
    """{"v-u@v": [view-ref, port]} plus a shared node table for the views."""
    table: Dict[str, list] = {}
    labels = {}
    for (v, e), (view, port) in sorted(hel.items()):
        u = e[0] if e[1] == v else e[1]
        ref = _tree_table(view.root, table)
        labels[f"{v}-{u}@{v}"] = [ref, view.radius, port]
    return {"labels": labels, "nodes": table}


def hel_from_json(d: dict) -> Dict[Tuple[int, Edge], Any]:
    table = d["nodes"]
    built: Dict[str, TNode] = {}

    def build(k: str) -> TNode:
        # iterative post-order over the shared node table
        stack = [(k, False)]
        while stack:
            x, expanded = stack.pop()
            if x in built:
                continue
            if expanded:
                label, kids = table[x]
                built[x] = tnode(from_jsonable(label), [(from_jsonable(el), built[c]) for el, c in kids])
                continue
            stack.append((x, True))
            stack.extend((c, False) for _, c in table[x][1] if c not in built)
        return built[k]

    out = {}
    for key, (ref, radius, port) in d["labels"].items():
        pair, at = key.split("@")
        v, u = (int(s) for s in pair.split("-"))
        if int(at) != v:
            raise ValueError(f"half-edge key {key!r} is inconsistent")
        out[(v, ekey(v, u))] = (RootedView(build(ref), radius), port)
    return out


# ---------------------------------------------------------------- DOT

_STYLE = {
    "original": 'shape=circle style=filled fillcolor=black fontcolor=white',
    "outer": 'shape=circle style=filled fillcolor=pink',
    "inner": 'shape=circle style=filled fillcolor=white',
    "malformed": 'shape=box style=filled fillcolor=gray',
}


def to_dot(g: LabeledGraph, classes: Optional[Dict[int, str]] = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.sorted_vertices():
        attrs = _STYLE.get((classes or {}).get(v, ""), "")
        lab = g.node_labels.get(v)
        text = f'label="{v}' + (f":{lab}" if lab is not None else "") + '"'
        lines.append(f"  {v} [{text}{' ' + attrs if attrs else ''}];")
    for u, v in g.sorted_edges():
        w = g.edge_weights.get((u, v))
        lines.append(f"  {u} -- {v}" + (" [style=bold]" if w == 1 else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
