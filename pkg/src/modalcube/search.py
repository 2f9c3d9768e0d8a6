"""Bounded exhaustive search over finite single-relation frames.

Frames of size ``n`` are enumerated by their row-major encoding, ``0`` up to
``2**(n*n) - 1``. Every scan below returns the *first* hit in that order, so
results only depend on the inputs. When several worker processes are used the
code range is cut into contiguous blocks (high-order bits) and the first
non-empty block wins, which is exactly what a sequential scan would return.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Any, Callable, Iterable, Iterator, Sequence

from .catalog import CONDITION_AXIOM, frame_to_json
from .errors import BudgetError
from .formula import Axiom, CompiledValidity, Valuation, frame_find_failure
from .kripke import (
    CHECKERS,
    Condition,
    ConditionSet,
    Frame,
    condition_mask,
    format_conditions,
    frame_print,
    rows_from_code,
    set_mask,
    world_name,
)

log = logging.getLogger(__name__)

MAX_WORLDS_UNPRUNED = 5
MAX_WORLDS_PRUNED = 6
# Sizes whose canonical representatives are found by orbit marking in a bytearray.
_ORBIT_TABLE_LIMIT = 5


@dataclass(frozen=True)
class SearchBudget:
    max_worlds: int = 4
    use_canonical_pruning: bool = False
    parallelism_hint: int = 1

    def __post_init__(self) -> None:
        if self.max_worlds < 1:
            raise BudgetError(f"max_worlds must be at least 1, got {self.max_worlds}")
        limit = MAX_WORLDS_PRUNED if self.use_canonical_pruning else MAX_WORLDS_UNPRUNED
        if self.max_worlds > limit:
            hint = "" if self.use_canonical_pruning else " without canonical pruning"
            raise BudgetError(f"max_worlds={self.max_worlds} exceeds {limit}{hint}")
        if self.parallelism_hint < 1:
            raise BudgetError(f"parallelism_hint must be at least 1, got {self.parallelism_hint}")

    def check_size(self, n: int) -> None:
        if n < 1:
            raise BudgetError(f"world count must be at least 1, got {n}")
        limit = MAX_WORLDS_PRUNED if self.use_canonical_pruning else MAX_WORLDS_UNPRUNED
        if n > limit:
            raise BudgetError(f"{n} worlds exceeds the enumeration limit of {limit}")
        if n >= 5:
            log.warning("enumerating frames with %d worlds; this is slow", n)


DEFAULT_BUDGET = SearchBudget()


# -- enumeration and canonical forms -----------------------------------------

@lru_cache(maxsize=None)
def _row_tables(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Per permutation: (perm, permuted-row lookup indexed by row bitmask)."""
    tables = []
    for perm in permutations(range(n)):
        lookup = []
        for row in range(1 << n):
            out = 0
            for t in range(n):
                if row >> t & 1:
                    out |= 1 << perm[t]
            lookup.append(out)
        tables.append((perm, tuple(lookup)))
    return tuple(tables)


def _permuted_codes(rows: Sequence[int], n: int) -> Iterator[int]:
    for perm, lookup in _row_tables(n):
        code = 0
        for s, row in enumerate(rows):
            code |= lookup[row] << (perm[s] * n)
        yield code


def canonical_code(rows: Sequence[int]) -> int:
    return min(_permuted_codes(rows, len(rows)))


def canonical_form(frame: Frame) -> Frame:
    """The isomorphic copy of ``frame`` (relation 0) with the least encoding."""
    return Frame.from_code(frame.n_worlds, canonical_code(frame.rows(0)))


@lru_cache(maxsize=None)
def canonical_codes(n: int) -> tuple[int, ...]:
    """All canonical encodings for ``n`` worlds, ascending."""
    total = 1 << (n * n)
    if n > _ORBIT_TABLE_LIMIT:
        return tuple(c for c in range(total) if canonical_code(rows_from_code(c, n)) == c)
    # The first code met in an orbit is its minimum; mark the rest of the orbit.
    seen = bytearray(total)
    out = []
    for code in range(total):
        if seen[code]:
            continue
        out.append(code)
        for image in _permuted_codes(rows_from_code(code, n), n):
            seen[image] = 1
    return tuple(out)


def _codes(n: int, pruned: bool, lo: int = 0, hi: int | None = None) -> Iterable[int]:
    hi = (1 << (n * n)) if hi is None else hi
    if not pruned:
        return range(lo, hi)
    return (c for c in canonical_codes(n) if lo <= c < hi)


def frame_count(n: int, pruned: bool = False) -> int:
    return len(canonical_codes(n)) if pruned else 1 << (n * n)


def _position(n: int, code: int, pruned: bool) -> int:
    """1-based index of ``code`` in the enumeration of size ``n``."""
    if not pruned:
        return code + 1
    from bisect import bisect_left

    return bisect_left(canonical_codes(n), code) + 1


def enumerate_relations(n: int, budget: SearchBudget = DEFAULT_BUDGET) -> Iterator[Frame]:
    """Every single-relation frame on ``n`` worlds, ascending by encoding.

    With canonical pruning only one representative per isomorphism class is
    produced.
    """
    budget.check_size(n)
    for code in _codes(n, budget.use_canonical_pruning):
        yield Frame.from_code(n, code)


# -- partitioned scans -------------------------------------------------------

def _blocks(n: int, jobs: int) -> list[tuple[int, int]]:
    total = 1 << (n * n)
    bits = 0
    while (1 << bits) < jobs and bits < n * n:
        bits += 1
    count = 1 << bits
    step = total // count
    return [(i * step, (i + 1) * step) for i in range(count)]


def _scan_counterexample(n: int, lo: int, hi: int, pruned: bool, holds: int, fails: int) -> int | None:
    """First code where every ``holds`` condition is true and some ``fails`` one is false."""
    checks = [(1 << c, CHECKERS[c]) for c in Condition if (holds | fails) >> c & 1]
    for code in _codes(n, pruned, lo, hi):
        rows = rows_from_code(code, n)
        mask = 0
        for bit, check in checks:
            if check(rows):
                mask |= bit
        if mask & holds == holds and mask & fails != fails:
            return code
    return None


def _scan_equivalence(n: int, lo: int, hi: int, pruned: bool, left: int, right: int) -> int | None:
    for code in _codes(n, pruned, lo, hi):
        mask = condition_mask(rows_from_code(code, n))
        if (mask & left == left) != (mask & right == right):
            return code
    return None


def _scan_correspondence(n: int, lo: int, hi: int, pruned: bool, cond: Condition, axiom: Axiom) -> int | None:
    checker = CHECKERS[cond]
    validity = CompiledValidity(axiom.schema)
    for code in _codes(n, pruned, lo, hi):
        rows = rows_from_code(code, n)
        if checker(rows) != (validity.failure_on((rows,), n) is None):
            return code
    return None


def _first_hit(scan: Callable[..., int | None], n: int, budget: SearchBudget, *args: Any) -> int | None:
    jobs = budget.parallelism_hint
    pruned = budget.use_canonical_pruning
    if jobs == 1:
        return scan(n, 0, 1 << (n * n), pruned, *args)
    blocks = _blocks(n, jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(scan, n, lo, hi, pruned, *args) for lo, hi in blocks]
        results = [f.result() for f in futures]
    for hit in results:
        if hit is not None:
            return hit
    return None


# -- results -----------------------------------------------------------------

@dataclass(frozen=True)
class FailingInstance:
    """A concrete refutation of an axiom schema: valuation and world."""

    axiom: Axiom
    valuation: Valuation
    world: int

    def to_json(self, n_worlds: int) -> dict[str, Any]:
        return {
            "axiom": self.axiom.label,
            "valuation": self.valuation.to_json(),
            "world": world_name(self.world),
        }

    def render(self, n_worlds: int) -> str:
        return f"axiom {self.axiom.label} fails at world {world_name(self.world)} with {self.valuation.render(n_worlds)}"


@dataclass(frozen=True)
class Witness:
    frame: Frame
    failed_condition: Condition | None
    failing_instance: FailingInstance | None

    @property
    def size(self) -> int:
        return self.frame.n_worlds

    def to_json(self) -> dict[str, Any]:
        n = self.frame.n_worlds
        return {
            "frame": frame_print(self.frame),
            **frame_to_json(self.frame),
            "failed_condition": self.failed_condition.label if self.failed_condition is not None else None,
            "failing_instance": self.failing_instance.to_json(n) if self.failing_instance else None,
        }

    def render(self) -> str:
        lines = [frame_print(self.frame).rstrip()]
        if self.failed_condition is not None:
            lines.append(f"fails: {self.failed_condition.label}")
        if self.failing_instance is not None:
            lines.append(self.failing_instance.render(self.frame.n_worlds))
        return "\n".join(lines)


def failing_instance_for(frame: Frame, axiom: Axiom) -> FailingInstance | None:
    hit = frame_find_failure(frame, axiom.schema)
    if hit is None:
        return None
    valuation, world = hit
    return FailingInstance(axiom, valuation, world)


def make_witness(frame: Frame, failed_condition: Condition) -> Witness:
    """Witness for a frame violating ``failed_condition``, with the refuting axiom instance."""
    instance = failing_instance_for(frame, CONDITION_AXIOM[failed_condition])
    if instance is None:
        raise AssertionError(
            f"{failed_condition.label} fails but its axiom is valid on\n{frame_print(frame)}"
        )
    return Witness(frame, failed_condition, instance)


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    bound: int
    frames_checked: int
    result: str
    witness: Witness | None
    elapsed: float
    detail: str | None = None

    def __post_init__(self) -> None:
        if self.result not in ("holds", "refuted"):
            raise ValueError(f"result must be 'holds' or 'refuted', got {self.result!r}")
        if (self.result == "refuted") != (self.witness is not None):
            raise ValueError("a report carries a witness exactly when it is refuted")

    @property
    def holds(self) -> bool:
        return self.result == "holds"

    def to_json(self, include_elapsed: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "claim": self.claim,
            "bound": self.bound,
            "frames_checked": self.frames_checked,
            "result": self.result,
        }
        if self.detail is not None:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if include_elapsed:
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return out


def _implication_claim(ante: ConditionSet, cons: ConditionSet) -> str:
    return f"{{{format_conditions(ante)}}} => {{{format_conditions(cons)}}}"


# -- public searches ---------------------------------------------------------

def find_countermodel_at(antecedent: Iterable[Condition], consequent: Iterable[Condition], n: int,
                         budget: SearchBudget = DEFAULT_BUDGET) -> Witness | None:
    """First frame of exactly ``n`` worlds meeting ``antecedent`` but not ``consequent``."""
    ante, cons = frozenset(antecedent), frozenset(consequent)
    budget.check_size(n)
    code = _first_hit(_scan_counterexample, n, budget, set_mask(ante), set_mask(cons))
    if code is None:
        return None
    frame = Frame.from_code(n, code)
    failed = next(c for c in sorted(cons) if not CHECKERS[c](frame.rows(0)))
    return make_witness(frame, failed)


def find_countermodel(antecedent: Iterable[Condition], consequent: Iterable[Condition],
                      budget: SearchBudget = DEFAULT_BUDGET) -> Witness | None:
    """Smallest, then encoding-least, frame meeting ``antecedent`` but not ``consequent``."""
    for n in range(1, budget.max_worlds + 1):
        witness = find_countermodel_at(antecedent, consequent, n, budget)
        if witness is not None:
            return witness
    return None


def verify_minimality(antecedent: Iterable[Condition], consequent: Iterable[Condition], size: int,
                      budget: SearchBudget = DEFAULT_BUDGET) -> VerificationReport:
    """Does ``antecedent => consequent`` hold on every frame with exactly ``size`` worlds?"""
    ante, cons = frozenset(antecedent), frozenset(consequent)
    start = time.perf_counter()
    witness = find_countermodel_at(ante, cons, size, budget)
    pruned = budget.use_canonical_pruning
    if witness is None:
        checked = frame_count(size, pruned)
    else:
        checked = _position(size, witness.frame.code(), pruned)
    return VerificationReport(
        claim=f"{_implication_claim(ante, cons)} on {size}-world frames",
        bound=size,
        frames_checked=checked,
        result="holds" if witness is None else "refuted",
        witness=witness,
        elapsed=time.perf_counter() - start,
    )


def _bounded_scan(scan: Callable[..., int | None], budget: SearchBudget, *args: Any) -> tuple[Frame | None, int]:
    pruned = budget.use_canonical_pruning
    checked = 0
    for n in range(1, budget.max_worlds + 1):
        budget.check_size(n)
        code = _first_hit(scan, n, budget, *args)
        if code is not None:
            return Frame.from_code(n, code), checked + _position(n, code, pruned)
        checked += frame_count(n, pruned)
    return None, checked


def verify_correspondence(cond: Condition, axiom: Axiom,
                          budget: SearchBudget = DEFAULT_BUDGET) -> VerificationReport:
    """Check that ``cond`` holds exactly on the frames validating ``axiom``."""
    start = time.perf_counter()
    CompiledValidity(axiom.schema).check_cap(budget.max_worlds)
    frame, checked = _bounded_scan(_scan_correspondence, budget, cond, axiom)
    witness = detail = None
    if frame is not None:
        instance = failing_instance_for(frame, axiom)
        if instance is not None:
            detail = f"{cond.label} holds but axiom {axiom.label} is not valid"
            witness = Witness(frame, None, instance)
        else:
            detail = f"axiom {axiom.label} is valid but {cond.label} fails"
            witness = Witness(frame, cond, None)
    return VerificationReport(
        claim=f"{cond.label} <=> axiom {axiom.label}",
        bound=budget.max_worlds,
        frames_checked=checked,
        result="holds" if frame is None else "refuted",
        witness=witness,
        elapsed=time.perf_counter() - start,
        detail=detail,
    )


def verify_equivalence(left: Iterable[Condition], right: Iterable[Condition],
                       budget: SearchBudget = DEFAULT_BUDGET) -> VerificationReport:
    """Check that the conjunctions of ``left`` and ``right`` hold on the same frames."""
    lset, rset = frozenset(left), frozenset(right)
    start = time.perf_counter()
    frame, checked = _bounded_scan(_scan_equivalence, budget, set_mask(lset), set_mask(rset))
    witness = detail = None
    if frame is not None:
        rows = frame.rows(0)
        if all(CHECKERS[c](rows) for c in lset):
            detail = "left holds, right fails"
            failing = rset
        else:
            detail = "right holds, left fails"
            failing = lset
        failed = next(c for c in sorted(failing) if not CHECKERS[c](rows))
        witness = make_witness(frame, failed)
    return VerificationReport(
        claim=f"{{{format_conditions(lset)}}} <=> {{{format_conditions(rset)}}}",
        bound=budget.max_worlds,
        frames_checked=checked,
        result="holds" if frame is None else "refuted",
        witness=witness,
        elapsed=time.perf_counter() - start,
        detail=detail,
    )
