"""Finite Kripke frames and the five frame conditions.

Worlds are the integers ``0..n_worlds-1``. Each accessibility relation is
stored row-major as a tuple of ints: bit ``t`` of ``rows[s]`` is set iff
``s R t``. A single-relation frame on ``n`` worlds therefore has a natural
integer encoding, ``sum(rows[s] << (s * n))``, which is the order used by the
enumerator in :mod:`modalcube.search`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import FrameParseError, InvalidArgumentError, UnknownNameError

Rows = tuple[int, ...]


class Condition(enum.IntEnum):
    """Frame conditions, ordered for deterministic tie-breaking."""

    REFL = 0
    SYM = 1
    SER = 2
    TRANS = 3
    EUCL = 4

    @property
    def label(self) -> str:
        return self.name.lower()

    def __str__(self) -> str:
        return self.label


ConditionSet = frozenset[Condition]

ALL_CONDITIONS: tuple[Condition, ...] = tuple(Condition)


def parse_condition(name: str) -> Condition:
    try:
        return Condition[name.strip().upper()]
    except KeyError:
        raise UnknownNameError(
            f"unknown frame condition {name!r}; expected one of "
            + ", ".join(c.label for c in Condition)
        ) from None


def parse_conditions(text: str) -> ConditionSet:
    """Parse a comma-separated list such as ``"ser,trans"``; blank means empty."""
    return frozenset(parse_condition(part) for part in text.split(",") if part.strip())


def format_conditions(conds: Iterable[Condition]) -> str:
    return ",".join(c.label for c in sorted(conds))


def rows_from_code(code: int, n: int) -> Rows:
    mask = (1 << n) - 1
    return tuple((code >> (s * n)) & mask for s in range(n))


def code_from_rows(rows: Sequence[int]) -> int:
    n = len(rows)
    code = 0
    for s, row in enumerate(rows):
        code |= row << (s * n)
    return code


@dataclass(frozen=True)
class Frame:
    """A finite frame with one or more accessibility relations."""

    n_worlds: int
    relations: tuple[Rows, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n_worlds, int) or self.n_worlds < 1:
            raise InvalidArgumentError(f"n_worlds must be a positive integer, got {self.n_worlds!r}")
        if not self.relations:
            raise InvalidArgumentError("a frame needs at least one relation")
        limit = 1 << self.n_worlds
        for k, rows in enumerate(self.relations):
            if len(rows) != self.n_worlds:
                raise InvalidArgumentError(
                    f"relation {k} has {len(rows)} rows for {self.n_worlds} worlds"
                )
            for s, row in enumerate(rows):
                if not 0 <= row < limit:
                    raise InvalidArgumentError(
                        f"relation {k} row {s} has bits beyond world {self.n_worlds - 1}"
                    )

    @classmethod
    def from_edges(cls, n_worlds: int, *edge_lists: Iterable[tuple[int, int]]) -> Frame:
        """Build a frame from 0-based edge lists, one per relation."""
        if not edge_lists:
            edge_lists = ((),)
        relations = []
        for edges in edge_lists:
            rows = [0] * n_worlds
            for s, t in edges:
                if not (0 <= s < n_worlds and 0 <= t < n_worlds):
                    raise InvalidArgumentError(f"edge ({s},{t}) outside 0..{n_worlds - 1}")
                rows[s] |= 1 << t
            relations.append(tuple(rows))
        return cls(n_worlds, tuple(relations))

    @classmethod
    def from_code(cls, n_worlds: int, code: int) -> Frame:
        if not 0 <= code < 1 << (n_worlds * n_worlds):
            raise InvalidArgumentError(f"code {code} out of range for {n_worlds} worlds")
        return cls(n_worlds, (rows_from_code(code, n_worlds),))

    def rows(self, rel_index: int = 0) -> Rows:
        if not 0 <= rel_index < len(self.relations):
            raise InvalidArgumentError(
                f"relation index {rel_index} out of range (frame has {len(self.relations)})"
            )
        return self.relations[rel_index]

    def has_edge(self, s: int, t: int, rel_index: int = 0) -> bool:
        return bool(self.rows(rel_index)[s] >> t & 1)

    def edges(self, rel_index: int = 0) -> list[tuple[int, int]]:
        rows = self.rows(rel_index)
        return [(s, t) for s in range(self.n_worlds) for t in range(self.n_worlds) if rows[s] >> t & 1]

    def code(self, rel_index: int = 0) -> int:
        return code_from_rows(self.rows(rel_index))

    @property
    def full(self) -> int:
        return (1 << self.n_worlds) - 1

    def __str__(self) -> str:
        return frame_print(self)


# Word-parallel checkers over row tuples. These are the hot path of the search,
# so they take raw rows rather than a Frame.

def is_refl(rows: Rows) -> bool:
    return all(row >> s & 1 for s, row in enumerate(rows))


def is_sym(rows: Rows) -> bool:
    n = len(rows)
    for s in range(n):
        col = 0
        bit = 1 << s
        for t in range(n):
            if rows[t] & bit:
                col |= 1 << t
        if col != rows[s]:
            return False
    return True


def is_ser(rows: Rows) -> bool:
    return all(rows)


def is_trans(rows: Rows) -> bool:
    # for each edge (s,t): row(t) must be a subset of row(s)
    for row in rows:
        t = 0
        r = row
        while r:
            if r & 1 and rows[t] & ~row:
                return False
            r >>= 1
            t += 1
    return True


def is_eucl(rows: Rows) -> bool:
    # for each edge (s,t): row(s) must be a subset of row(t)
    for row in rows:
        t = 0
        r = row
        while r:
            if r & 1 and row & ~rows[t]:
                return False
            r >>= 1
            t += 1
    return True


CHECKERS = {
    Condition.REFL: is_refl,
    Condition.SYM: is_sym,
    Condition.SER: is_ser,
    Condition.TRANS: is_trans,
    Condition.EUCL: is_eucl,
}


def condition_mask(rows: Rows) -> int:
    """Bit ``c`` is set iff condition ``c`` holds on ``rows``."""
    mask = 0
    for cond, check in CHECKERS.items():
        if check(rows):
            mask |= 1 << cond
    return mask


def set_mask(conds: Iterable[Condition]) -> int:
    mask = 0
    for c in conds:
        mask |= 1 << c
    return mask


def check_condition(frame: Frame, rel_index: int, cond: Condition) -> bool:
    return CHECKERS[Condition(cond)](frame.rows(rel_index))


def check_condition_set(frame: Frame, rel_index: int, conds: Iterable[Condition]) -> bool:
    rows = frame.rows(rel_index)
    return all(CHECKERS[c](rows) for c in conds)


def failed_conditions(frame: Frame, rel_index: int, conds: Iterable[Condition]) -> list[Condition]:
    """Members of ``conds`` that do not hold, in tag order."""
    rows = frame.rows(rel_index)
    return [c for c in sorted(conds) if not CHECKERS[c](rows)]


# -- text format -------------------------------------------------------------

_WORLDS_RE = re.compile(r"worlds\s*:\s*(\S+)\s*$")
_REL_RE = re.compile(r"rel\s+(\d+)\s*:")
_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def frame_parse(text: str) -> Frame:
    """Parse the line-oriented frame format; edge pairs are 1-based."""
    lines = list(_content_lines(text))
    if not lines:
        raise FrameParseError("empty frame description", 1, 1)
    lineno, header = lines[0]
    indent = len(header) - len(header.lstrip())
    m = _WORLDS_RE.match(header.strip())
    if not m:
        raise FrameParseError("expected 'worlds: <n>'", lineno, indent + 1)
    raw_n = m.group(1)
    if not raw_n.isdigit() or int(raw_n) < 1:
        raise FrameParseError(f"world count must be a positive integer, got {raw_n!r}",
                              lineno, indent + m.start(1) + 1)
    n = int(raw_n)

    relations: dict[int, list[int]] = {}
    for lineno, line in lines[1:]:
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _REL_RE.match(body)
        if not m:
            raise FrameParseError("expected 'rel <k>: (s,t) ...'", lineno, indent + 1)
        k = int(m.group(1))
        if k in relations:
            raise FrameParseError(f"relation {k} defined twice", lineno, indent + m.start(1) + 1)
        rows = [0] * n
        pos = m.end()
        while True:
            while pos < len(body) and body[pos].isspace():
                pos += 1
            if pos == len(body):
                break
            col = indent + pos + 1
            pm = _PAIR_RE.match(body, pos)
            if not pm:
                raise FrameParseError(f"expected '(s,t)', found {body[pos:pos + 8]!r}", lineno, col)
            s, t = int(pm.group(1)), int(pm.group(2))
            for w in (s, t):
                if not 1 <= w <= n:
                    raise FrameParseError(f"world {w} outside 1..{n}", lineno, col)
            if rows[s - 1] >> (t - 1) & 1:
                raise FrameParseError(f"duplicate edge ({s},{t})", lineno, col)
            rows[s - 1] |= 1 << (t - 1)
            pos = pm.end()
        relations[k] = rows

    if not relations:
        raise FrameParseError("no relations given", lines[-1][0] + 1, 1)
    expected = list(range(len(relations)))
    if sorted(relations) != expected:
        missing = min(set(expected) - set(relations))
        raise FrameParseError(f"relation {missing} missing; indices must be 0..{len(relations) - 1}",
                              lines[-1][0], 1)
    return Frame(n, tuple(tuple(relations[k]) for k in expected))


def frame_print(frame: Frame) -> str:
    lines = [f"worlds: {frame.n_worlds}"]
    for k in range(len(frame.relations)):
        pairs = " ".join(f"({s + 1},{t + 1})" for s, t in frame.edges(k))
        lines.append(f"rel {k}: {pairs}".rstrip())
    return "\n".join(lines) + "\n"


def world_name(w: int) -> str:
    """Human-facing 1-based world name."""
    return f"i{w + 1}"


def format_world_set(mask: int, n: int) -> str:
    return "{" + ", ".join(world_name(w) for w in range(n) if mask >> w & 1) + "}"
