"""End-to-end A -> B -> D -> E runs with lift checks at every boundary."""
from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from .encode_ab import decode_ab, encode_ab, framework_constants, lift_out_a_to_b, lift_out_b_to_a, problem_b
from .formalisms import BOT, BudgetExceeded, LCLProblem, enumerate_solutions, verify, verify_re
from .gadget_bd import d_constants, default_chi, gadget_bd, lift_b_to_d, lift_d_to_b, problem_d
from .graphs import LabeledGraph
from .re_compile import lift_d_to_e, lift_e_to_d, permute_ports, problem_e, t_good_failures

BUDGET_ENV = "LCLREDUCE_BUDGET"


def env_budget(default: int) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}")


@dataclass
class PipelineConfig:
    r_a: int = 1
    max_label: int = 2
    max_degree: int = 3
    lam: int = 0
    r_b: int = 0
    k: int = 0
    r_d: int = 0
    zeta: Any = 0
    fixtures: List[str] = field(default_factory=list)
    budget: int = 10**6
    max_view_radius: int = 64
    max_solutions: int = 24
    fills: int = 2
    seed: int = 0

    DERIVED = ("lam", "r_b", "k", "r_d", "zeta")

    @classmethod
    def derive(cls, r_a: int = 1, max_label: int = 2, max_degree: int = 3, **rest) -> "PipelineConfig":
        fc = framework_constants(max_label, max_degree)
        r_b = fc.r_b(r_a)
        dc = d_constants(r_b)
        return cls(r_a, max_label, max_degree, fc.lam, r_b, dc.k, dc.r_d, dc.zeta, **rest)

    @classmethod
    def from_json(cls, d: dict) -> "PipelineConfig":
        """Derived constants are recomputed; any stored value that disagrees is rejected."""
        base = {k: d[k] for k in ("r_a", "max_label", "max_degree") if k in d}
        extra = {k: d[k] for k in ("fixtures", "budget", "max_view_radius", "max_solutions", "fills", "seed") if k in d}
        cfg = cls.derive(**base, **extra)
        for k in cls.DERIVED:
            if k in d and d[k] != getattr(cfg, k):
                raise ValueError(f"stale derived constant {k}: file has {d[k]!r}, recomputed {getattr(cfg, k)!r}")
        return cfg

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class StageResult:
    name: str
    forward_checked: int = 0
    forward_failed: int = 0
    backward_checked: int = 0
    backward_failed: int = 0
    counterexample: Optional[dict] = None
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.forward_failed == 0 and self.backward_failed == 0

    def fail(self, direction: str, detail: dict):
        if direction == "forward":
            self.forward_failed += 1
        else:
            self.backward_failed += 1
        if self.counterexample is None:
            self.counterexample = {"direction": direction, **detail}

    def to_json(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _solutions(p, g, limit: int, budget: int) -> List[Dict]:
    return list(itertools.islice(enumerate_solutions(p, g, budget=budget), limit))


def _default_labels(g: LabeledGraph) -> LabeledGraph:
    return g.with_labels(node_labels={v: g.node_labels.get(v, 0) for v in g.vertices})


# ---------------------------------------------------------------- stages

def stage_ab(problem_a: LCLProblem, g: LabeledGraph, cfg: PipelineConfig) -> Dict[str, Any]:
    """Lift every enumerated A solution to B and back (with random edge-gadget fills)."""
    if problem_a.edge_output_alphabet is not None:
        raise ValueError("the encoding carries node outputs only; problems with edge outputs are not encodable")
    g = _default_labels(g)
    pb, fc = problem_b(problem_a, cfg.max_label)
    gp, dm = encode_ab(g)
    res = StageResult("A-B")
    rng = random.Random(cfg.seed)
    sols = _solutions(problem_a, g, cfg.max_solutions, cfg.budget)
    if not sols:
        res.notes.append("problem A has no solution on this instance")
    legal_b = []
    for sa in sols:
        sb = lift_out_a_to_b(sa, dm)
        res.forward_checked += 1
        v = verify(pb, gp, sb)
        if not v:
            res.fail("forward", {"source": sa, "failing": v.failing()[:10]})
            continue
        legal_b.append(sb)
    alphabet = sorted(problem_a.output_alphabet or [], key=repr) + [BOT]
    edge_vertices = [x for x, (kind, _) in sorted(dm.owner.items()) if kind == "edge"]
    for sb in list(legal_b):
        for _ in range(cfg.fills):
            filled = dict(sb)
            for x in edge_vertices:
                filled[x] = rng.choice(alphabet)
            if verify(pb, gp, filled):
                legal_b.append(filled)
    for sb in legal_b:
        sa = lift_out_b_to_a(sb, dm)
        res.backward_checked += 1
        v = verify(problem_a, g, sa)
        if not v:
            res.fail("backward", {"failing": v.failing()[:10]})
    return {"result": res, "problem_b": pb, "encoded": gp, "decode": dm, "legal_b": legal_b, "constants": fc}


def stage_bd(problem_b: LCLProblem, g3: LabeledGraph, cfg: PipelineConfig, legal_b: Optional[List[Dict]] = None) -> Dict[str, Any]:
    """Lift B solutions to D through a gadgeting and back; also lift back recoloured D outputs."""
    dc = d_constants(problem_b.radius)
    if dc.r_d > cfg.max_view_radius:
        raise BudgetExceeded(f"r_D = {dc.r_d} exceeds the view-radius budget {cfg.max_view_radius}")
    gg = gadget_bd(g3, r_b=problem_b.radius)
    pd = problem_d(problem_b, dc)
    chi = default_chi(gg, dc.r_d)
    res = StageResult("B-D")
    if legal_b is None:
        legal_b = _solutions(problem_b, g3, cfg.max_solutions, cfg.budget)
    legal_d = []
    for sb in legal_b:
        sd = lift_b_to_d(sb, chi, gg, dc.r_d)
        res.forward_checked += 1
        v = verify(pd, gg.graph, sd)
        if not v:
            res.fail("forward", {"source": sb, "failing": v.failing()[:10]})
            continue
        legal_d.append(sd)
    # other legal D outputs: the same B outputs under a shifted colour component
    top = max(chi.values())
    variants = []
    for sd in legal_d[:2]:
        alt = {x: (top + 1 - c, b) for x, (c, b) in sd.items()}
        if verify(pd, gg.graph, alt):
            variants.append(alt)
    for sd in legal_d + variants:
        sb = lift_d_to_b(sd, gg)
        res.backward_checked += 1
        v = verify(problem_b, g3, sb)
        if not v:
            res.fail("backward", {"failing": v.failing()[:10]})
    return {"result": res, "problem_d": pd, "gadgeted": gg, "legal_d": legal_d, "constants": dc}


def stage_de(pd, gg, dc, legal_d: List[Dict], cfg: PipelineConfig) -> Dict[str, Any]:
    """Lift D outputs to half-edge labels and back; check t_good on every accepted labeling."""
    g = gg.graph
    pe = problem_e(pd.accepts, name=f"E[{pd.name}]")
    res = StageResult("D-E")
    legal_e = []
    for sd in legal_d:
        hel = lift_d_to_e(g, sd, dc.r_d)
        res.forward_checked += 1
        v = verify_re(pe, g, hel)
        if not v:
            res.fail("forward", {"failing": [str(x) for x in v.failing()[:10]]})
            continue
        legal_e.append(hel)
    perms = list(itertools.permutations((1, 2, 3)))[1:]
    extra = []
    for hel in legal_e[:1]:
        for v in g.sorted_vertices()[:4]:
            for perm in perms:
                alt = permute_ports(g, hel, v, perm)
                if verify_re(pe, g, alt):
                    extra.append(alt)
    tgood_bad = 0
    for hel in legal_e + extra:
        sd = lift_e_to_d(g, hel)
        res.backward_checked += 1
        v = verify(pd, g, sd)
        if not v:
            res.fail("backward", {"failing": v.failing()[:10]})
        if t_good_failures(g, hel, dc.r_d):
            tgood_bad += 1
            res.fail("backward", {"t_good": "view mismatch"})
    res.notes.append(f"t_good checked on {len(legal_e) + len(extra)} labelings, {tgood_bad} failures")
    return {"result": res, "problem_e": pe, "legal_e": legal_e}


# ---------------------------------------------------------------- report

STAGES = ("A-B", "A-E", "B-D", "B-E", "D-E")


def run_pipeline(problem: LCLProblem, g: LabeledGraph, stages: str, cfg: PipelineConfig) -> Dict[str, Any]:
    """Run the requested stage range; the report is deterministic apart from 'timings'."""
    if stages not in STAGES:
        raise ValueError(f"unknown stage range {stages!r}; choose from {STAGES}")
    start_a = stages.startswith("A")
    report: Dict[str, Any] = {"stages": [], "config": cfg.to_json(), "timings": {}}
    verdict = "pass"
    try:
        t = time.perf_counter()
        if start_a:
            ab = stage_ab(problem, g, cfg)
            report["stages"].append(ab["result"].to_json())
            report["timings"]["A-B"] = time.perf_counter() - t
            if not ab["result"].passed:
                verdict = "fail"
            pb, g3, legal_b = ab["problem_b"], ab["encoded"], ab["legal_b"]
        else:
            pb, g3, legal_b = problem, g, None
        if stages in ("A-E", "B-D", "B-E", "D-E") and verdict == "pass":
            t = time.perf_counter()
            bd = stage_bd(pb, g3, cfg, legal_b)
            report["timings"]["B-D"] = time.perf_counter() - t
            if stages != "D-E":
                report["stages"].append(bd["result"].to_json())
                if not bd["result"].passed:
                    verdict = "fail"
            if stages in ("A-E", "B-E", "D-E") and verdict == "pass":
                t = time.perf_counter()
                de = stage_de(bd["problem_d"], bd["gadgeted"], bd["constants"], bd["legal_d"], cfg)
                report["stages"].append(de["result"].to_json())
                report["timings"]["D-E"] = time.perf_counter() - t
                if not de["result"].passed:
                    verdict = "fail"
    except BudgetExceeded as exc:
        verdict = "budget-exceeded"
        report["budget"] = str(exc)
    report["verdict"] = verdict
    return report
