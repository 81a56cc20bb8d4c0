"""Command-line front end. Exit codes: 0 pass, 1 verification failure, 2 input error, 3 budget exceeded."""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Dict, List, Optional

from . import serialize as ser
from .encode_ab import decode_ab, encode_ab, framework_constants, lift_out_a_to_b, lift_out_b_to_a, problem_b
from .fixtures import instance_by_name, problem_by_name
from .formalisms import BudgetExceeded, LCLProblem, PNProblem, REProblem, brute_force_solve, verify
from .gadget_bd import (
    check_coloring_theorem,
    contract_db,
    d_constants,
    expand_edges,
    gadget_bd,
    problem_d,
    theta_gadgeting,
    twisted_twin_chains,
)
from .graphs import LabeledGraph, ekey, parse_edge_str, edge_str
from .local_sim import (
    SimInstance,
    builtin,
    distance_k_coloring,
    induced_decoded_order,
    run_local,
    run_slocal,
    simulate_a1_prime,
    simulate_a2_prime,
)
from .pipeline import PipelineConfig, env_budget, run_pipeline
from .re_compile import lift_d_to_e, lift_e_to_d, problem_e

PASS, FAIL, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(obj, args) -> None:
    text = ser.dump_json(obj, getattr(args, "out", None))
    if not getattr(args, "out", None):
        print(text)


def _load_instance(spec: str) -> LabeledGraph:
    if spec.startswith("fixture:"):
        return instance_by_name(spec[len("fixture:"):])
    try:
        d = ser.load_json(spec)
    except json.JSONDecodeError as exc:
        raise InputError(f"{spec}: invalid JSON ({exc})")
    if isinstance(d, dict) and "graph" in d and "edges" not in d:
        d = d["graph"]
    return ser.graph_from_json(d)


def _problem(args):
    if args.problem is None:
        raise InputError("--problem is required here")
    if args.problem.endswith(".json") or os.path.exists(args.problem):
        try:
            return ser.problem_from_json(ser.load_json(args.problem))
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.problem}: invalid JSON ({exc})")
    params = {}
    if getattr(args, "colors", None) is not None:
        params["colors"] = args.colors
    return problem_by_name(args.problem, **params)


def _load_gadgeted(spec: str):
    """(graph, classes) from a gadgeted fixture name or a gadget-bd JSON document."""
    if spec.startswith("fixture:"):
        name = spec[len("fixture:"):]
        if name == "fig1b":
            gg = expand_edges([0, 1], [(0, 1, 5)])
        elif name == "theta":
            gg = theta_gadgeting()
        elif name == "twisted":
            gg, _ = twisted_twin_chains()
        else:
            g = instance_by_name(name)
            return g, None
        return gg.graph, dict(gg.classes)
    d = ser.load_json(spec)
    if isinstance(d, dict) and "graph" in d and "edges" not in d:
        classes = {int(k): v for k, v in d["classes"].items()} if "classes" in d else None
        return ser.graph_from_json(d["graph"]), classes
    return ser.graph_from_json(d), None


def _hel_plain(d: dict, g: LabeledGraph) -> Dict:
    out = {}
    for key, lab in d.items():
        pair, at = key.split("@")
        v, u = (int(s) for s in pair.split("-"))
        out[(int(at), ekey(v, u))] = ser.from_jsonable(lab)
    return out


def _budget(args) -> int:
    return env_budget(getattr(args, "budget", None) or 10**6)


# ---------------------------------------------------------------- commands

def cmd_verify(args) -> int:
    p = _problem(args)
    g = _load_instance(args.instance)
    raw = ser.load_json(args.output)
    if isinstance(p, REProblem):
        out = _hel_plain(raw, g)
        v = verify(p, g, out)
    else:
        out = ser.labeling_from_json(raw)
        eout = None
        if args.edge_output:
            eout = {parse_edge_str(k): ser.from_jsonable(x) for k, x in ser.load_json(args.edge_output).items()}
        v = verify(p, g, out, eout)
    _emit({"overall": v.overall, "failures": [[str(w), r.value] for w, r in v.failures]}, args)
    return PASS if v else FAIL


def cmd_solve(args) -> int:
    p = _problem(args)
    g = _load_instance(args.instance)
    sol = brute_force_solve(p, g, budget=_budget(args))
    if sol is None:
        print(json.dumps({"solution": None}), file=sys.stderr)
        return FAIL
    if isinstance(p, REProblem):
        body = {f"{v}-{e[0] if e[1] == v else e[1]}@{v}": ser.to_jsonable(l) for (v, e), l in sorted(sol.items(), key=repr)}
    elif isinstance(sol, tuple):
        body = {"nodes": ser.labeling_to_json(sol[0]), "edges": {edge_str(e): l for e, l in sorted(sol[1].items())}}
    else:
        body = ser.labeling_to_json(sol)
    _emit(body, args)
    return PASS


def cmd_encode_ab(args) -> int:
    g = _load_instance(args.instance)
    if any(v not in g.node_labels for v in g.vertices):
        g = g.with_labels(node_labels={v: g.node_labels.get(v, 0) for v in g.vertices})
    gp, dm = encode_ab(g, ports=args.ports)
    _emit({"graph": ser.graph_to_json(gp), "decode_map": dm.to_json()}, args)
    return PASS


def cmd_decode_ab(args) -> int:
    gp = _load_instance(args.instance)
    mg, dm = decode_ab(gp, args.max_degree)
    _emit({"decoded": ser.multigraph_to_json(mg), "decode_map": dm.to_json(), "diagnostics": dm.diagnostics}, args)
    return PASS


def cmd_lift_ab(args) -> int:
    g = _load_instance(args.instance)
    if any(v not in g.node_labels for v in g.vertices):
        g = g.with_labels(node_labels={v: g.node_labels.get(v, 0) for v in g.vertices})
    gp, dm = encode_ab(g)
    lab = ser.labeling_from_json(ser.load_json(args.labeling))
    out = lift_out_a_to_b(lab, dm) if args.direction == "a2b" else lift_out_b_to_a(lab, dm)
    _emit(ser.labeling_to_json(out), args)
    return PASS


def _gadgeted_json(gg) -> dict:
    return {
        "graph": ser.graph_to_json(gg.graph),
        "classes": {str(v): c for v, c in sorted(gg.classes.items())},
        "originals": {str(v): w for v, w in sorted(gg.originals.items())},
        "coloring": {edge_str(e): c for e, c in sorted(gg.coloring.items())},
    }


def cmd_gadget_bd(args) -> int:
    g = _load_instance(args.instance)
    x = None
    if args.coloring != "auto":
        x = {parse_edge_str(k): v for k, v in ser.load_json(args.coloring).items()}
    gg = gadget_bd(g, x, args.r_b)
    _emit(_gadgeted_json(gg), args)
    return PASS


def cmd_contract_db(args) -> int:
    gp = _load_instance(args.instance)
    c = contract_db(gp)
    _emit({
        "graph": ser.graph_to_json(c.graph),
        "coloring": {edge_str(e): k for e, k in sorted(c.coloring.items())},
        "reversed": len(c.reversed),
    }, args)
    return PASS


def cmd_check_theorem(args) -> int:
    if args.fixture == "k4":
        gg = gadget_bd(instance_by_name("k4"))
        g, classes = gg.graph, gg.classes
    elif args.fixture:
        g, classes = _load_gadgeted("fixture:" + args.fixture)
    elif args.instance:
        g, classes = _load_gadgeted(args.instance)
    else:
        raise InputError("give --fixture or --instance")
    if classes is None:
        raise InputError("the instance carries no vertex classification")
    originals = {v for v, c in classes.items() if c == "original"}
    if g.n > args.max_vertices:
        _emit({"status": "budget-exceeded", "reason": f"{g.n} vertices > {args.max_vertices}"}, args)
        return BUDGET
    res = check_coloring_theorem(g, originals, args.r, _budget(args))
    body = {"status": res.status, "nodes": res.nodes, "vertices": g.n}
    if res.counterexample is not None:
        body["witness"] = list(res.witness)
        body["counterexample"] = ser.labeling_to_json(res.counterexample)
    _emit(body, args)
    return {"exhausted-ok": PASS, "counterexample": FAIL}.get(res.status, BUDGET)


def _lcl_b(args) -> LCLProblem:
    p = _problem(args)
    if not isinstance(p, LCLProblem):
        raise InputError("this command needs an LCL problem on 3-regular graphs")
    return p


def cmd_compile_re(args) -> int:
    pb = _lcl_b(args)
    dc = d_constants(pb.radius)
    _emit({
        "source": pb.name,
        "r_B": dc.r_b, "k": dc.k, "r_D": dc.r_d, "zeta": dc.zeta,
        "alphabet": "certified radius-r_D views x ports {1,2,3}",
        "node_constraint": "oracle: one certified view with ports 1,2,3",
        "edge_constraint": "oracle: directional/pruned subtrees fit",
    }, args)
    return PASS


def cmd_lift_de(args) -> int:
    g = _load_instance(args.instance)
    sd = ser.labeling_from_json(ser.load_json(args.labeling))
    pb = _lcl_b(args)
    dc = d_constants(pb.radius)
    pd = problem_d(pb, dc)
    hel = lift_d_to_e(g, sd, dc.r_d, pd.accepts if args.check else None)
    _emit(ser.hel_to_json(hel), args)
    return PASS


def cmd_lift_ed(args) -> int:
    g = _load_instance(args.instance)
    hel = ser.hel_from_json(ser.load_json(args.labeling))
    prob = None
    if args.check:
        pb = _lcl_b(args)
        prob = problem_e(problem_d(pb, d_constants(pb.radius)).accepts)
    _emit(ser.labeling_to_json(lift_e_to_d(g, hel, prob)), args)
    return PASS


def cmd_simulate(args) -> int:
    g = _load_instance(args.instance)
    alg = builtin(args.alg)
    ids = {v: i for i, v in enumerate(g.sorted_vertices())}
    if args.mode in ("local", "slocal"):
        inst = SimInstance(g, ids, g.node_labels or None, max(args.T, alg.locality))
        if args.mode == "local":
            res = run_local(alg, inst)
        else:
            order = [int(x) for x in args.order.split(",")] if args.order else g.sorted_vertices()
            res = run_slocal(alg, inst, order)
    elif args.mode == "a1":
        lam = framework_constants(args.max_label).lam
        res = simulate_a1_prime(alg, g, ids, lam)
    else:
        if any(v not in g.node_labels for v in g.vertices):
            g = g.with_labels(node_labels={v: g.node_labels.get(v, 0) for v in g.vertices})
        res = simulate_a2_prime(alg, g, ids)
    _emit({"outputs": ser.labeling_to_json(res.outputs), "ledger": {str(v): r for v, r in sorted(res.ledger.items())}}, args)
    return PASS


def cmd_pipeline(args) -> int:
    if args.config:
        cfg = PipelineConfig.from_json(ser.load_json(args.config))
    else:
        cfg = PipelineConfig.derive(args.r_a, args.max_label)
    cfg.budget = env_budget(cfg.budget)
    p = _problem(args)
    g = _load_instance(args.instance)
    report = run_pipeline(p, g, args.stages, cfg)
    if not args.timings:
        report.pop("timings", None)
    _emit(report, args)
    return {"pass": PASS, "fail": FAIL, "budget-exceeded": BUDGET}[report["verdict"]]


def cmd_export(args) -> int:
    g, classes = _load_gadgeted(args.instance)
    if args.format == "json":
        _emit(ser.graph_to_json(g), args)
    else:
        text = ser.to_dot(g, classes)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return PASS


def cmd_constants(args) -> int:
    _emit(PipelineConfig.derive(args.r_a, args.max_label, args.max_degree).to_json(), args)
    return PASS


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lclreduce", description="LCL -> RE reduction toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        return sp

    def problem_args(sp):
        sp.add_argument("--problem", required=True)
        sp.add_argument("--colors", type=int)

    sp = add("verify", cmd_verify, "verify an output labeling")
    problem_args(sp)
    sp.add_argument("--instance", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--edge-output")

    sp = add("solve", cmd_solve, "brute-force a solution")
    problem_args(sp)
    sp.add_argument("--instance", required=True)
    sp.add_argument("--budget", type=int)

    sp = add("encode-ab", cmd_encode_ab, "encode a labeled graph into a 3-regular graph")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--ports", choices=("id", "canonical"), default="id")

    sp = add("decode-ab", cmd_decode_ab, "decode a 3-regular graph")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--max-degree", type=int, default=3)

    sp = add("lift-ab", cmd_lift_ab, "lift outputs across the encoding")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--labeling", required=True)
    sp.add_argument("--direction", choices=["a2b", "b2a"], required=True)

    sp = add("gadget-bd", cmd_gadget_bd, "expand edges into A-gadget chains")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--coloring", default="auto")
    sp.add_argument("--r-b", type=int, default=1)

    sp = add("contract-db", cmd_contract_db, "contract expanded edges")
    sp.add_argument("--instance", required=True)

    sp = add("check-theorem", cmd_check_theorem, "search for colouring-theorem counterexamples")
    sp.add_argument("--fixture", choices=["theta", "twisted", "k4", "fig1b"])
    sp.add_argument("--instance")
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--max-vertices", type=int, default=40)
    sp.add_argument("--budget", type=int)

    sp = add("compile-re", cmd_compile_re, "describe the compiled half-edge problem")
    problem_args(sp)

    sp = add("lift-de", cmd_lift_de, "lift a D labeling to half-edge labels")
    problem_args(sp)
    sp.add_argument("--instance", required=True)
    sp.add_argument("--labeling", required=True)
    sp.add_argument("--check", action="store_true")

    sp = add("lift-ed", cmd_lift_ed, "read a D labeling back from half-edge labels")
    sp.add_argument("--problem")
    sp.add_argument("--colors", type=int)
    sp.add_argument("--instance", required=True)
    sp.add_argument("--labeling", required=True)
    sp.add_argument("--check", action="store_true")

    sp = add("simulate", cmd_simulate, "run a built-in algorithm")
    sp.add_argument("--mode", choices=["local", "slocal", "a1", "a2"], required=True)
    sp.add_argument("--alg", required=True)
    sp.add_argument("--instance", required=True)
    sp.add_argument("--T", type=int, default=0)
    sp.add_argument("--order")
    sp.add_argument("--max-label", type=int, default=2)

    sp = add("pipeline", cmd_pipeline, "run A -> B -> D -> E with lift checks")
    problem_args(sp)
    sp.add_argument("--instance", required=True)
    sp.add_argument("--stages", default="A-B")
    sp.add_argument("--config")
    sp.add_argument("--r-a", type=int, default=1)
    sp.add_argument("--max-label", type=int, default=2)
    sp.add_argument("--timings", action="store_true")

    sp = add("export", cmd_export, "export a graph as JSON or DOT")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--format", choices=["dot", "json"], required=True)

    sp = add("constants", cmd_constants, "print derived constants")
    sp.add_argument("--r-a", type=int, default=1)
    sp.add_argument("--max-label", type=int, default=2)
    sp.add_argument("--max-degree", type=int, default=3)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget-exceeded", "detail": str(exc)}), file=sys.stderr)
        return BUDGET
    except (InputError, ValueError, KeyError, FileNotFoundError, json.JSONDecodeError, IndexError, TypeError) as exc:
        print(json.dumps({"error": "input", "detail": str(exc)}), file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
