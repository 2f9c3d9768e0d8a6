"""Modal formulas: AST, concrete syntax, Kripke evaluation and frame validity.

Two evaluators live here. :func:`evaluate` computes forcing at a single world
by walking successors one edge at a time; :func:`eval_set` computes the whole
truth set of a formula as a world bitmask. The former is the reference the
latter is tested against.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Mapping, Union

from .errors import FormulaSyntaxError, InvalidArgumentError, ResourceLimitError, UnknownNameError
from .kripke import Frame, Rows, format_world_set

# Largest number of valuations frame_valid will enumerate: (2^n)^k <= 2^24.
VALUATION_CAP_BITS = 24


@dataclass(frozen=True)
class PropVar:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Not:
    sub: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box:
    rel: int
    sub: Formula

    def __post_init__(self) -> None:
        if self.rel < 0:
            raise InvalidArgumentError(f"negative relation index {self.rel}")


@dataclass(frozen=True)
class Dia:
    rel: int
    sub: Formula

    def __post_init__(self) -> None:
        if self.rel < 0:
            raise InvalidArgumentError(f"negative relation index {self.rel}")


Formula = Union[PropVar, Top, Bottom, Not, And, Or, Implies, Iff, Box, Dia]
BINARY = (And, Or, Implies, Iff)
MODAL = (Box, Dia)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (Not, Box, Dia)):
        yield from subformulas(f.sub)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def free_vars(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, PropVar))


def relation_indices(f: Formula) -> frozenset[int]:
    return frozenset(g.rel for g in subformulas(f) if isinstance(g, MODAL))


def depth(f: Formula) -> int:
    if isinstance(f, (Not, Box, Dia)):
        return 1 + depth(f.sub)
    if isinstance(f, BINARY):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


class Valuation(Mapping[str, int]):
    """Immutable map from variable name to the bitmask of worlds where it holds."""

    __slots__ = ("_items",)

    def __init__(self, assignments: Mapping[str, int] | None = None, **kwargs: int):
        items = dict(assignments or {}, **kwargs)
        for name, mask in items.items():
            if not isinstance(mask, int) or mask < 0:
                raise InvalidArgumentError(f"valuation of {name!r} must be a non-negative bitmask")
        self._items = tuple(sorted(items.items()))

    @classmethod
    def from_sets(cls, assignments: Mapping[str, set[int] | frozenset[int]]) -> Valuation:
        return cls({name: sum(1 << w for w in worlds) for name, worlds in assignments.items()})

    def __getitem__(self, name: str) -> int:
        for key, mask in self._items:
            if key == name:
                return mask
        raise KeyError(name)

    def __iter__(self) -> Iterator[str]:
        return (key for key, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Valuation):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return f"Valuation({dict(self._items)!r})"

    def worlds(self, name: str) -> frozenset[int]:
        mask = self[name]
        return frozenset(w for w in range(mask.bit_length()) if mask >> w & 1)

    def render(self, n_worlds: int) -> str:
        """1-based rendering, e.g. ``p = {i1}, q = {}``."""
        return ", ".join(f"{name} = {format_world_set(mask, n_worlds)}" for name, mask in self._items)

    def to_json(self) -> dict[str, list[int]]:
        return {name: [w + 1 for w in sorted(self.worlds(name))] for name, _ in self._items}


def _check_preconditions(frame: Frame, valuation: Mapping[str, int], f: Formula) -> None:
    for k in relation_indices(f):
        if k >= len(frame.relations):
            raise InvalidArgumentError(
                f"formula uses relation {k} but the frame has {len(frame.relations)} relation(s)"
            )
    full = frame.full
    for name in free_vars(f):
        if name not in valuation:
            raise InvalidArgumentError(f"variable {name!r} is not assigned by the valuation")
        if valuation[name] & ~full:
            raise InvalidArgumentError(
                f"valuation of {name!r} mentions worlds beyond {frame.n_worlds - 1}"
            )


def evaluate(frame: Frame, valuation: Mapping[str, int], world: int, f: Formula) -> bool:
    """Forcing of ``f`` at ``world``, by direct recursion over successors."""
    if not 0 <= world < frame.n_worlds:
        raise InvalidArgumentError(f"world {world} outside 0..{frame.n_worlds - 1}")
    _check_preconditions(frame, valuation, f)
    return _force(frame, valuation, world, f)


def _force(frame: Frame, val: Mapping[str, int], w: int, f: Formula) -> bool:
    if isinstance(f, PropVar):
        return bool(val[f.name] >> w & 1)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _force(frame, val, w, f.sub)
    if isinstance(f, And):
        return _force(frame, val, w, f.left) and _force(frame, val, w, f.right)
    if isinstance(f, Or):
        return _force(frame, val, w, f.left) or _force(frame, val, w, f.right)
    if isinstance(f, Implies):
        return not _force(frame, val, w, f.left) or _force(frame, val, w, f.right)
    if isinstance(f, Iff):
        return _force(frame, val, w, f.left) == _force(frame, val, w, f.right)
    if isinstance(f, Box):
        return all(_force(frame, val, v, f.sub)
                   for v in range(frame.n_worlds) if frame.has_edge(w, v, f.rel))
    if isinstance(f, Dia):
        return any(_force(frame, val, v, f.sub)
                   for v in range(frame.n_worlds) if frame.has_edge(w, v, f.rel))
    raise TypeError(f"not a formula: {f!r}")


# -- bitset evaluation -------------------------------------------------------

SetFn = Callable[[tuple[Rows, ...], int, tuple[int, ...]], int]


def _box_image(rows: Rows, s: int) -> int:
    m = 0
    bit = 1
    for row in rows:
        if not row & ~s:
            m |= bit
        bit <<= 1
    return m


def _dia_image(rows: Rows, s: int) -> int:
    m = 0
    bit = 1
    for row in rows:
        if row & s:
            m |= bit
        bit <<= 1
    return m


def compile_set(f: Formula, var_order: tuple[str, ...]) -> SetFn:
    """Turn ``f`` into a closure ``(relations, full, masks) -> truth set``.

    ``masks`` lists the variable bitmasks in ``var_order``.
    """
    if isinstance(f, PropVar):
        i = var_order.index(f.name)
        return lambda rels, full, vals: vals[i]
    if isinstance(f, Top):
        return lambda rels, full, vals: full
    if isinstance(f, Bottom):
        return lambda rels, full, vals: 0
    if isinstance(f, Not):
        a = compile_set(f.sub, var_order)
        return lambda rels, full, vals: full & ~a(rels, full, vals)
    if isinstance(f, BINARY):
        a = compile_set(f.left, var_order)
        b = compile_set(f.right, var_order)
        if isinstance(f, And):
            return lambda rels, full, vals: a(rels, full, vals) & b(rels, full, vals)
        if isinstance(f, Or):
            return lambda rels, full, vals: a(rels, full, vals) | b(rels, full, vals)
        if isinstance(f, Implies):
            return lambda rels, full, vals: (full & ~a(rels, full, vals)) | b(rels, full, vals)
        return lambda rels, full, vals: full & ~(a(rels, full, vals) ^ b(rels, full, vals))
    if isinstance(f, Box):
        a = compile_set(f.sub, var_order)
        k = f.rel
        return lambda rels, full, vals: _box_image(rels[k], a(rels, full, vals))
    if isinstance(f, Dia):
        a = compile_set(f.sub, var_order)
        k = f.rel
        return lambda rels, full, vals: _dia_image(rels[k], a(rels, full, vals))
    raise TypeError(f"not a formula: {f!r}")


def eval_set(frame: Frame, valuation: Mapping[str, int], f: Formula) -> int:
    """Truth set of ``f`` as a bitmask over the frame's worlds."""
    _check_preconditions(frame, valuation, f)
    order = tuple(sorted(free_vars(f)))
    fn = compile_set(f, order)
    return fn(frame.relations, frame.full, tuple(valuation[v] for v in order))


class CompiledValidity:
    """Reusable validity checker for one formula across many frames."""

    def __init__(self, f: Formula):
        self.formula = f
        self.var_order = tuple(sorted(free_vars(f)))
        self.max_rel = max(relation_indices(f), default=-1)
        self._fn = compile_set(f, self.var_order)

    def check_cap(self, n_worlds: int) -> None:
        k = len(self.var_order)
        if n_worlds * k > VALUATION_CAP_BITS:
            raise ResourceLimitError(
                f"frame validity over {k} variable(s) on {n_worlds} worlds needs "
                f"2^{n_worlds * k} valuations",
                f"(2^n)^k <= 2^{VALUATION_CAP_BITS}",
            )

    def failure_on(self, relations: tuple[Rows, ...], n_worlds: int) -> tuple[tuple[int, ...], int] | None:
        """Least failing (masks, world), or None if valid. No precondition checks."""
        full = (1 << n_worlds) - 1
        fn = self._fn
        for vals in product(range(full + 1), repeat=len(self.var_order)):
            bad = full & ~fn(relations, full, vals)
            if bad:
                return vals, (bad & -bad).bit_length() - 1
        return None

    def find_failure(self, frame: Frame) -> tuple[Valuation, int] | None:
        if self.max_rel >= len(frame.relations):
            raise InvalidArgumentError(
                f"formula uses relation {self.max_rel} but the frame has "
                f"{len(frame.relations)} relation(s)"
            )
        self.check_cap(frame.n_worlds)
        hit = self.failure_on(frame.relations, frame.n_worlds)
        if hit is None:
            return None
        vals, world = hit
        return Valuation(dict(zip(self.var_order, vals))), world


def frame_find_failure(frame: Frame, f: Formula) -> tuple[Valuation, int] | None:
    """Least refuting (valuation, world) of ``f`` on ``frame``, or None.

    Valuations are ordered by their bitmasks read as integers, variables in
    sorted name order (first variable most significant), then by world.
    """
    return CompiledValidity(f).find_failure(frame)


def frame_valid(frame: Frame, f: Formula) -> bool:
    return frame_find_failure(frame, f) is None


# -- axioms ------------------------------------------------------------------

P = PropVar("p")


class Axiom(enum.Enum):
    M = "M"
    B = "B"
    D = "D"
    FOUR = "4"
    FIVE = "5"

    @property
    def label(self) -> str:
        return self.value

    @property
    def schema(self) -> Formula:
        return _SCHEMATA[self]

    def __str__(self) -> str:
        return self.value


_SCHEMATA: dict[Axiom, Formula] = {
    Axiom.M: Implies(Box(0, P), P),
    Axiom.B: Implies(P, Box(0, Dia(0, P))),
    Axiom.D: Implies(Box(0, P), Dia(0, P)),
    Axiom.FOUR: Implies(Box(0, P), Box(0, Box(0, P))),
    Axiom.FIVE: Implies(Dia(0, P), Box(0, Dia(0, P))),
}

_AXIOM_ALIASES = {"T": Axiom.M, "IV": Axiom.FOUR, "V": Axiom.FIVE, "FOUR": Axiom.FOUR, "FIVE": Axiom.FIVE}


def parse_axiom(name: str) -> Axiom:
    key = name.strip().upper()
    for ax in Axiom:
        if ax.value == key:
            return ax
    if key in _AXIOM_ALIASES:
        return _AXIOM_ALIASES[key]
    raise UnknownNameError(f"unknown axiom {name!r}; expected one of M, B, D, 4, 5")


# -- concrete syntax ---------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<box>\[\s*(?P<boxk>\d*)\s*\])
  | (?P<dia><\s*(?P<diak>\d*)\s*>)
  | (?P<not>~)
  | (?P<and>&)
  | (?P<or>\|)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<ident>[a-z][a-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int
    rel: int = 0


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unknown token {text[pos]!r}", 1, pos + 1)
        kind = m.lastgroup
        if kind in ("boxk", "diak"):
            kind = kind[:3]
        if kind != "ws":
            rel = 0
            if kind in ("box", "dia"):
                digits = m.group(kind + "k")
                rel = int(digits) if digits else 0
            elif kind == "ident" and m.group() in ("true", "false"):
                kind = m.group()
            tokens.append(_Token(kind, m.group(), pos, rel))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, tok: _Token, expected: str) -> FormulaSyntaxError:
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return FormulaSyntaxError(f"expected {expected}, found {found}", 1, tok.pos + 1)

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek().kind != "eof":
            raise self.error(self.peek(), "operator or end of input")
        return f

    def iff(self) -> Formula:
        f = self.implies()
        while self.peek().kind == "iff":
            self.take()
            f = Iff(f, self.implies())
        return f

    def implies(self) -> Formula:
        f = self.disj()
        if self.peek().kind == "imp":
            self.take()
            return Implies(f, self.implies())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek().kind == "or":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "and":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.take()
            return Not(self.unary())
        if tok.kind == "box":
            self.take()
            return Box(tok.rel, self.unary())
        if tok.kind == "dia":
            self.take()
            return Dia(tok.rel, self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.take()
        if tok.kind == "ident":
            return PropVar(tok.text)
        if tok.kind == "true":
            return Top()
        if tok.kind == "false":
            return Bottom()
        if tok.kind == "lpar":
            f = self.iff()
            close = self.take()
            if close.kind != "rpar":
                raise self.error(close, "')'")
            return f
        raise self.error(tok, "a formula")


def formula_parse(text: str) -> Formula:
    return _Parser(text).parse()


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OPS = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_UNARY_PREC = 5
_ATOM_PREC = 6


def _prec(f: Formula) -> int:
    if isinstance(f, BINARY):
        return _PREC[type(f)]
    if isinstance(f, (Not, Box, Dia)):
        return _UNARY_PREC
    return _ATOM_PREC


def formula_print(f: Formula) -> str:
    """Canonical text with the fewest parentheses that re-parse to ``f``."""
    if isinstance(f, PropVar):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, (Not, Box, Dia)):
        if isinstance(f, Not):
            op = "~"
        elif isinstance(f, Box):
            op = "[]" if f.rel == 0 else f"[{f.rel}]"
        else:
            op = "<>" if f.rel == 0 else f"<{f.rel}>"
        return op + _wrap(f.sub, _prec(f.sub) < _UNARY_PREC)
    p = _PREC[type(f)]
    if isinstance(f, Implies):
        # right-associative
        left = _wrap(f.left, _prec(f.left) <= p)
        right = _wrap(f.right, _prec(f.right) < p)
    else:
        left = _wrap(f.left, _prec(f.left) < p)
        right = _wrap(f.right, _prec(f.right) <= p)
    return f"{left} {_OPS[type(f)]} {right}"


def _wrap(f: Formula, parens: bool) -> str:
    text = formula_print(f)
    return f"({text})" if parens else text
