"""Kripke semantics and bounded countermodel search for the modal logic cube."""

from .catalog import edge_table, equivalence_table, logic_by_name
from .formula import (
    Axiom,
    Valuation,
    eval_set,
    evaluate,
    formula_parse,
    formula_print,
    frame_find_failure,
    frame_valid,
)
from .kripke import Condition, Frame, check_condition, check_condition_set, frame_parse, frame_print
from .search import (
    SearchBudget,
    canonical_form,
    enumerate_relations,
    find_countermodel,
    verify_correspondence,
    verify_equivalence,
    verify_minimality,
)

__version__ = "0.1.0"
