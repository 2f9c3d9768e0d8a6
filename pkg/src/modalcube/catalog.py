"""The modal logic cube as static data.

Fifteen logics, the axiom/condition correspondence, nine alternative
axiomatizations, and the 25 proper-inclusion edges. Edge condition sets are
kept exactly as the countermodel conjectures state them, which is not always
the textbook characterization of the two logics; :func:`consistency_report`
shows where the two disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import UnknownNameError
from .formula import Axiom
from .kripke import Condition, ConditionSet, Frame, format_conditions

REFL, SYM, SER, TRANS, EUCL = Condition.REFL, Condition.SYM, Condition.SER, Condition.TRANS, Condition.EUCL

AXIOM_CONDITION: dict[Axiom, Condition] = {
    Axiom.M: REFL,
    Axiom.B: SYM,
    Axiom.D: SER,
    Axiom.FOUR: TRANS,
    Axiom.FIVE: EUCL,
}
CONDITION_AXIOM: dict[Condition, Axiom] = {c: a for a, c in AXIOM_CONDITION.items()}


def conds(*cs: Condition) -> ConditionSet:
    return frozenset(cs)


@dataclass(frozen=True)
class Logic:
    name: str
    axioms: frozenset[Axiom]

    @property
    def conditions(self) -> ConditionSet:
        return frozenset(AXIOM_CONDITION[a] for a in self.axioms)


def _logic(name: str, *axioms: Axiom) -> Logic:
    return Logic(name, frozenset(axioms))


M_, B_, D_, IV, V = Axiom.M, Axiom.B, Axiom.D, Axiom.FOUR, Axiom.FIVE

LOGICS: tuple[Logic, ...] = (
    _logic("K"),
    _logic("D", D_),
    _logic("M", M_),
    _logic("KB", B_),
    _logic("K4", IV),
    _logic("K5", V),
    _logic("K45", IV, V),
    _logic("KB5", B_, V),
    _logic("DB", D_, B_),
    _logic("D4", D_, IV),
    _logic("D5", D_, V),
    _logic("D45", D_, IV, V),
    _logic("B", M_, B_),
    _logic("S4", M_, IV),
    _logic("S5", M_, V),
)
_BY_NAME = {logic.name: logic for logic in LOGICS}
_ALIASES = {"T": "M"}


def logic_by_name(name: str) -> Logic:
    key = name.strip().upper()
    key = _ALIASES.get(key, key)
    try:
        return _BY_NAME[key]
    except KeyError:
        raise UnknownNameError(f"unknown logic {name!r}") from None


@dataclass(frozen=True)
class EquivalenceFact:
    id: str
    title: str
    left: ConditionSet
    right: ConditionSet


EQUIVALENCES: tuple[EquivalenceFact, ...] = (
    EquivalenceFact("B1", "M5 = MB5", conds(REFL, EUCL), conds(REFL, SYM, EUCL)),
    EquivalenceFact("B2", "M5 = M4B5", conds(REFL, EUCL), conds(REFL, TRANS, SYM, EUCL)),
    EquivalenceFact("B3", "M5 = M45", conds(REFL, EUCL), conds(REFL, TRANS, EUCL)),
    EquivalenceFact("B4", "M5 = M4B", conds(REFL, EUCL), conds(REFL, TRANS, SYM)),
    EquivalenceFact("B5", "M5 = D4B", conds(REFL, EUCL), conds(SER, TRANS, SYM)),
    EquivalenceFact("B6", "M5 = D4B5", conds(REFL, EUCL), conds(SER, TRANS, SYM, EUCL)),
    EquivalenceFact("B7", "M5 = DB5", conds(REFL, EUCL), conds(SER, SYM, EUCL)),
    EquivalenceFact("B8", "KB5 = K4B5", conds(SYM, EUCL), conds(TRANS, SYM, EUCL)),
    EquivalenceFact("B9", "KB5 = K4B", conds(SYM, EUCL), conds(TRANS, SYM)),
)


def equivalence_table() -> list[EquivalenceFact]:
    return list(EQUIVALENCES)


@dataclass(frozen=True)
class InclusionEdge:
    """``stronger > weaker``: a frame meeting ``antecedent`` but not ``consequent``."""

    id: str
    stronger: str
    weaker: str
    antecedent: ConditionSet
    consequent: ConditionSet
    known_witness: Frame | None
    expected_size: int
    expected_min_size: int

    @property
    def title(self) -> str:
        return f"{self.stronger} > {self.weaker}"

    @property
    def canonical_antecedent(self) -> ConditionSet:
        return logic_by_name(self.weaker).conditions

    @property
    def canonical_consequent(self) -> ConditionSet:
        return logic_by_name(self.stronger).conditions


def _w(n: int, *pairs: tuple[int, int]) -> Frame:
    """Witness frame from 1-based pairs."""
    return Frame.from_edges(n, [(s - 1, t - 1) for s, t in pairs])


def _edge(id: str, stronger: str, weaker: str, ante: ConditionSet, cons: ConditionSet,
          size: int, witness: Frame | None = None) -> InclusionEdge:
    return InclusionEdge(id, stronger, weaker, ante, cons, witness, size, size - 1 if size > 1 else size)


EDGES: tuple[InclusionEdge, ...] = (
    _edge("C1", "K4", "K", conds(), conds(TRANS), 2, _w(2, (1, 1), (1, 2), (2, 1))),
    _edge("C2", "K5", "K", conds(), conds(EUCL), 2),
    _edge("C3", "KB", "K", conds(), conds(SYM), 2),
    _edge("C4", "K45", "K4", conds(SER), conds(SER, EUCL), 2, _w(2, (1, 2), (2, 1))),
    _edge("C5", "K45", "K5", conds(EUCL), conds(SER, EUCL), 1, _w(1)),
    _edge("C6", "KB5", "KB", conds(SYM), conds(SYM, EUCL), 2),
    _edge("C7", "KB5", "K45", conds(SER, EUCL), conds(SYM, EUCL), 2, _w(2, (1, 1), (2, 1))),
    _edge("C8", "D", "K", conds(), conds(SER), 1, _w(1)),
    _edge("C9", "D4", "K4", conds(TRANS), conds(SER, TRANS), 1),
    _edge("C10", "D5", "K5", conds(EUCL), conds(SER, EUCL), 1),
    _edge("C11", "D45", "K45", conds(TRANS, EUCL), conds(SER, TRANS, EUCL), 1),
    _edge("C12", "DB", "KB", conds(SYM), conds(SER, SYM), 1),
    _edge("C13", "S5", "KB5", conds(SYM, EUCL), conds(REFL, EUCL), 1),
    _edge("C14", "D4", "D", conds(SER), conds(SER, TRANS), 2),
    _edge("C15", "D5", "D", conds(SER), conds(SER, EUCL), 2),
    _edge("C16", "DB", "D", conds(SER), conds(SER, SYM), 2),
    _edge("C17", "D45", "D4", conds(SER, TRANS), conds(SER, TRANS, EUCL), 2,
          _w(2, (1, 1), (1, 2), (2, 2))),
    _edge("C18", "D45", "D5", conds(SER, EUCL), conds(SER, TRANS, EUCL), 3,
          _w(3, (1, 1), (1, 2), (2, 1), (2, 2), (3, 2))),
    _edge("C19", "M", "D", conds(SER), conds(REFL), 2),
    _edge("C20", "S4", "D4", conds(SER, TRANS), conds(REFL, TRANS), 2, _w(2, (1, 1), (2, 1))),
    _edge("C21", "S5", "D45", conds(SER, TRANS, EUCL), conds(REFL, EUCL), 2, _w(2, (1, 1), (2, 1))),
    _edge("C22", "B", "DB", conds(SER, SYM), conds(REFL, SYM), 2, _w(2, (1, 1), (1, 2), (2, 1))),
    _edge("C23", "B", "M", conds(REFL), conds(REFL, SYM), 2, _w(2, (1, 1), (1, 2), (2, 2))),
    _edge("C24", "S5", "S4", conds(REFL, TRANS), conds(REFL, EUCL), 2, _w(2, (1, 1), (1, 2), (2, 2))),
    _edge("C25", "S5", "B", conds(REFL, SYM), conds(REFL, EUCL), 3,
          _w(3, (1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3))),
)
_EDGE_BY_ID = {e.id: e for e in EDGES}


def edge_table() -> list[InclusionEdge]:
    return list(EDGES)


def edge_by_id(edge_id: str) -> InclusionEdge:
    try:
        return _EDGE_BY_ID[edge_id.strip().upper()]
    except KeyError:
        raise UnknownNameError(f"unknown edge {edge_id!r}") from None


def _equivalence_classes() -> list[set[ConditionSet]]:
    classes: list[set[ConditionSet]] = []
    for fact in EQUIVALENCES:
        joined = {fact.left, fact.right}
        rest = []
        for cls in classes:
            if cls & joined:
                joined |= cls
            else:
                rest.append(cls)
        classes = rest + [joined]
    return classes


_CLASSES = _equivalence_classes()


def equivalent_sets(a: ConditionSet, b: ConditionSet) -> bool:
    """Equal, or linked through a chain of the nine recorded equivalences."""
    if a == b:
        return True
    return any(a in cls and b in cls for cls in _CLASSES)


def consistency_report() -> list[dict[str, Any]]:
    """Compare each edge's stored sets with the textbook sets of its two logics."""
    rows = []
    for e in EDGES:
        ante_ok = equivalent_sets(e.antecedent, e.canonical_antecedent)
        cons_ok = equivalent_sets(e.consequent, e.canonical_consequent)
        rows.append({
            "id": e.id,
            "antecedent": format_conditions(e.antecedent),
            "canonical_antecedent": format_conditions(e.canonical_antecedent),
            "consequent": format_conditions(e.consequent),
            "canonical_consequent": format_conditions(e.canonical_consequent),
            "consistent": ante_ok and cons_ok,
        })
    return rows


def frame_to_json(frame: Frame) -> dict[str, Any]:
    return {
        "n_worlds": frame.n_worlds,
        "edges": [[s + 1, t + 1] for s, t in frame.edges(0)],
    }


def catalog_json() -> dict[str, Any]:
    return {
        "logics": [
            {
                "name": lg.name,
                "axioms": sorted(a.label for a in lg.axioms),
                "conditions": [c.label for c in sorted(lg.conditions)],
            }
            for lg in LOGICS
        ],
        "equivalences": [
            {
                "id": f.id,
                "title": f.title,
                "left": [c.label for c in sorted(f.left)],
                "right": [c.label for c in sorted(f.right)],
            }
            for f in EQUIVALENCES
        ],
        "edges": [
            {
                "id": e.id,
                "stronger": e.stronger,
                "weaker": e.weaker,
                "antecedent": [c.label for c in sorted(e.antecedent)],
                "consequent": [c.label for c in sorted(e.consequent)],
                "canonical_antecedent": [c.label for c in sorted(e.canonical_antecedent)],
                "canonical_consequent": [c.label for c in sorted(e.canonical_consequent)],
                "known_witness": frame_to_json(e.known_witness) if e.known_witness else None,
                "expected_size": e.expected_size,
                "expected_min_size": e.expected_min_size,
            }
            for e in EDGES
        ],
    }
