from __future__ import annotations

import random
from itertools import product
from pathlib import Path

from hypothesis import strategies as st

from modalcube.formula import And, Bottom, Box, Dia, Iff, Implies, Not, Or, PropVar, Top
from modalcube.kripke import Frame, frame_parse

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def fixture_frame(name: str) -> Frame:
    return frame_parse((FIXTURES / f"{name}.frame").read_text())


def all_frames(n: int):
    for code in range(1 << (n * n)):
        yield Frame.from_code(n, code)


def all_valuations(names, n):
    for masks in product(range(1 << n), repeat=len(names)):
        yield dict(zip(names, masks))


def random_formula(rng: random.Random, depth: int, names=("p", "q"), rels: int = 1):
    if depth == 0 or rng.random() < 0.2:
        return rng.choice([PropVar(v) for v in names] + [Top(), Bottom()])
    kind = rng.randrange(9)
    if kind == 0:
        return Not(random_formula(rng, depth - 1, names, rels))
    if kind in (1, 2):
        cls = Box if kind == 1 else Dia
        return cls(rng.randrange(rels), random_formula(rng, depth - 1, names, rels))
    cls = [And, Or, Implies, Iff, And, Implies][kind - 3]
    return cls(random_formula(rng, depth - 1, names, rels), random_formula(rng, depth - 1, names, rels))


def random_frame(rng: random.Random, n: int, rels: int = 1) -> Frame:
    return Frame(n, tuple(tuple(rng.randrange(1 << n) for _ in range(n)) for _ in range(rels)))


def depth_one_formulas(names=("p", "q")):
    """Every formula of depth at most one over ``names`` and relation 0."""
    atoms = [PropVar(v) for v in names] + [Top(), Bottom()]
    out = list(atoms)
    for a in atoms:
        out += [Not(a), Box(0, a), Dia(0, a)]
    for a, b in product(atoms, atoms):
        out += [And(a, b), Or(a, b), Implies(a, b), Iff(a, b)]
    return out


variable_names = st.sampled_from(["p", "q", "r", "p1", "foo_bar"])


def formulas(max_rel: int = 2):
    atoms = st.one_of(variable_names.map(PropVar), st.just(Top()), st.just(Bottom()))

    def extend(children):
        rel = st.integers(0, max_rel)
        return st.one_of(
            children.map(Not),
            st.builds(Box, rel, children),
            st.builds(Dia, rel, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
            st.builds(Iff, children, children),
        )

    return st.recursive(atoms, extend, max_leaves=24)


@st.composite
def frames(draw, max_worlds: int = 4, max_rels: int = 1, min_rels: int = 1):
    n = draw(st.integers(1, max_worlds))
    k = draw(st.integers(min_rels, max_rels))
    rows = tuple(
        tuple(draw(st.integers(0, (1 << n) - 1)) for _ in range(n)) for _ in range(k)
    )
    return Frame(n, rows)
