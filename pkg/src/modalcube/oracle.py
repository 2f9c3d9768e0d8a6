"""Reference implementations used only to cross-check the fast paths.

Everything here is a literal transcription of the first-order definitions,
quantifying over worlds with nested loops and querying single edges.
"""

from __future__ import annotations

from itertools import product

from .kripke import Condition, Frame


def naive_check_condition(frame: Frame, rel_index: int, cond: Condition) -> bool:
    n = frame.n_worlds
    W = range(n)

    def R(a: int, b: int) -> bool:
        return frame.has_edge(a, b, rel_index)

    if cond is Condition.REFL:
        return all(R(s, s) for s in W)
    if cond is Condition.SYM:
        return all(not R(s, t) or R(t, s) for s, t in product(W, W))
    if cond is Condition.SER:
        return all(any(R(s, t) for t in W) for s in W)
    if cond is Condition.TRANS:
        return all(not (R(s, t) and R(t, u)) or R(s, u) for s, t, u in product(W, W, W))
    if cond is Condition.EUCL:
        return all(not (R(s, t) and R(s, u)) or R(t, u) for s, t, u in product(W, W, W))
    raise ValueError(cond)


def naive_canonical_code(frame: Frame) -> int:
    """Least encoding over all world permutations, by brute force."""
    from itertools import permutations

    n = frame.n_worlds
    edges = frame.edges(0)
    best = None
    for perm in permutations(range(n)):
        code = sum(1 << (perm[s] * n + perm[t]) for s, t in edges)
        if best is None or code < best:
            best = code
    return best
