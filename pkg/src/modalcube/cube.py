"""Whole-cube verification: correspondences, equivalences and all inclusion edges."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from . import catalog
from .catalog import AXIOM_CONDITION, EDGES, EQUIVALENCES, LOGICS, InclusionEdge
from .kripke import check_condition_set, failed_conditions
from .search import (
    SearchBudget,
    find_countermodel,
    make_witness,
    verify_correspondence,
    verify_equivalence,
    verify_minimality,
)


def _labels(conds) -> list[str]:
    return [c.label for c in sorted(conds)]


def _edge_record(edge: InclusionEdge, budget: SearchBudget) -> dict[str, Any]:
    witness = find_countermodel(edge.antecedent, edge.consequent, budget)
    size = witness.size if witness else None
    minimality_at = None
    minimal = None
    if witness is not None:
        if size > 1:
            minimality_at = size - 1
            minimal = verify_minimality(edge.antecedent, edge.consequent, size - 1, budget).holds
        else:
            minimal = True
    canonical = find_countermodel(edge.canonical_antecedent, edge.canonical_consequent, budget)
    return {
        "id": edge.id,
        "stronger": edge.stronger,
        "weaker": edge.weaker,
        "antecedent": _labels(edge.antecedent),
        "consequent": _labels(edge.consequent),
        "witness": witness.to_json() if witness else None,
        "witness_size": size,
        "status": "found" if witness else "no witness within bound",
        "minimality_verified_at": minimality_at,
        "minimal": minimal,
        "expected_size": edge.expected_size,
        "match": size == edge.expected_size,
        "canonical": {
            "antecedent": _labels(edge.canonical_antecedent),
            "consequent": _labels(edge.canonical_consequent),
            "consistent": catalog.equivalent_sets(edge.antecedent, edge.canonical_antecedent)
            and catalog.equivalent_sets(edge.consequent, edge.canonical_consequent),
            "witness_size": canonical.size if canonical else None,
        },
    }


def _fixture_record(edge: InclusionEdge) -> dict[str, Any]:
    frame = edge.known_witness
    holds = check_condition_set(frame, 0, edge.antecedent)
    failing = failed_conditions(frame, 0, edge.consequent)
    witness = make_witness(frame, failing[0]) if failing else None
    return {
        "id": edge.id,
        "frame": catalog.frame_to_json(frame),
        "antecedent_holds": holds,
        "failed_conditions": [c.label for c in failing],
        "failing_instance": witness.failing_instance.to_json(frame.n_worlds) if witness else None,
        "ok": holds and witness is not None,
    }


@dataclass
class CubeReport:
    bound: int
    pruned: bool
    correspondences: list[dict[str, Any]]
    equivalences: list[dict[str, Any]]
    edges: list[dict[str, Any]]
    fixtures: list[dict[str, Any]]
    elapsed_ms: dict[str, float] = field(default_factory=dict)

    @property
    def green(self) -> bool:
        return not self.red_items()

    def red_items(self) -> list[dict[str, Any]]:
        red = [r for r in self.correspondences if r["result"] != "holds"]
        red += [r for r in self.equivalences if r["result"] != "holds"]
        red += [r for r in self.edges if not r["match"] or r["minimal"] is not True]
        red += [r for r in self.fixtures if not r["ok"]]
        return red

    def payload(self) -> dict[str, Any]:
        """Deterministic content, without timings."""
        return {
            "bound": self.bound,
            "canonical_pruning": self.pruned,
            "correspondences": self.correspondences,
            "equivalences": self.equivalences,
            "edges": self.edges,
            "fixtures": self.fixtures,
            "summary": {
                "green": self.green,
                "edges_total": len(self.edges),
                "edges_matched": sum(r["match"] for r in self.edges),
                "correspondences_hold": sum(r["result"] == "holds" for r in self.correspondences),
                "equivalences_hold": sum(r["result"] == "holds" for r in self.equivalences),
                "fixtures_ok": sum(r["ok"] for r in self.fixtures),
            },
        }

    def to_json(self) -> dict[str, Any]:
        return {**self.payload(), "elapsed_ms": self.elapsed_ms}


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, round((time.perf_counter() - start) * 1000, 3)


def run_cube(budget: SearchBudget = SearchBudget()) -> CubeReport:
    start = time.perf_counter()
    corr, t_corr = _timed(lambda: [
        {"axiom": ax.label, "condition": cond.label,
         **verify_correspondence(cond, ax, budget).to_json(include_elapsed=False)}
        for ax, cond in AXIOM_CONDITION.items()
    ])
    equiv, t_equiv = _timed(lambda: [
        {"id": fact.id, "title": fact.title,
         **verify_equivalence(fact.left, fact.right, budget).to_json(include_elapsed=False)}
        for fact in EQUIVALENCES
    ])
    edges, t_edges = _timed(lambda: [_edge_record(e, budget) for e in EDGES])
    fixtures = [_fixture_record(e) for e in EDGES if e.known_witness is not None]
    report = CubeReport(budget.max_worlds, budget.use_canonical_pruning, corr, equiv, edges, fixtures)
    report.elapsed_ms = {
        "correspondences": t_corr,
        "equivalences": t_equiv,
        "edges": t_edges,
        "total": round((time.perf_counter() - start) * 1000, 3),
    }
    return report


def cube_dot(report: CubeReport) -> str:
    """Graphviz digraph: logics as nodes, inclusion edges from weaker to stronger."""
    lines = ["digraph cube {", "  rankdir=BT;", "  node [shape=box];"]
    for logic in LOGICS:
        lines.append(f'  "{logic.name}";')
    for rec in report.edges:
        size = rec["witness_size"]
        if size is None:
            attrs = f'label="{rec["id"]}: none", style=dashed'
        else:
            attrs = f'label="{rec["id"]}: {size}"'
        lines.append(f'  "{rec["weaker"]}" -> "{rec["stronger"]}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def describe_edge(rec: dict[str, Any]) -> str:
    ante = ",".join(rec["antecedent"])
    cons = ",".join(rec["consequent"])
    size = rec["witness_size"]
    found = f"witness size {size}" if size is not None else rec["status"]
    return (f"{rec['id']} {rec['stronger']} > {rec['weaker']}: {{{ante}}} -/-> {{{cons}}}, "
            f"{found}, expected {rec['expected_size']}")

