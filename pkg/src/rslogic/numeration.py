"""Automata for linear arithmetic over natural numbers in a fixed base.

Two independent construction routes are provided on purpose:

* ``linear_atom`` compiles a whole constraint sum(a_i * x_i) REL K in one
  pass, tracking the still-owed residual while scanning digits least
  significant first, then reversing.  This is the fast route used by the
  formula compiler.
* ``build_add`` / ``build_compare`` / ``build_const_mul`` assemble the same
  relations from a hand-written carry adder, a digitwise comparator and a
  doubling chain.  They exist as an independent cross-check of the first
  route and are kept deliberately separate.
"""

from __future__ import annotations

import itertools

from .automata import (
    MultiTrackAutomaton,
    NumberSystem,
    OP_AND,
    Track,
    complement,
    determinize,
    minimize,
    product,
    project,
    reverse,
)
from .errors import AutomatonError, BaseMismatchError, CompileError

__all__ = ["RELATIONS", "linear_atom", "build_add", "build_compare", "build_const_mul"]

RELATIONS = ("=", "!=", "<", "<=", ">", ">=")


def _trivial(tracks, truth: bool) -> MultiTrackAutomaton:
    size = 1
    for t in tracks:
        size *= t.base
    return MultiTrackAutomaton(
        tuple(tracks), 1, 0, {0} if truth else set(), [[0] * size]
    )


def linear_atom(terms, rel: str, constant: int, system: NumberSystem) -> MultiTrackAutomaton:
    """Minimal automaton for sum(coeff * var) REL constant.

    ``terms`` maps variable names to integer coefficients; every variable is
    read in the same ``system``.  Variables with coefficient 0 are dropped.
    The result reads tracks in sorted name order, msd first, and is padding
    closed, complete and minimal.
    """
    if rel not in RELATIONS:
        raise CompileError(f"unknown relation {rel!r}")
    terms = {name: c for name, c in terms.items() if c}
    names = sorted(terms)
    tracks = tuple(Track(n, system) for n in names)
    if not names:
        value = {"=": constant == 0, "!=": constant != 0, "<": 0 < constant,
                 "<=": 0 <= constant, ">": 0 > constant, ">=": 0 >= constant}[rel]
        return _trivial(tracks, value)
    if rel == "!=":
        return minimize(complement(linear_atom(terms, "=", constant, system)))
    coeffs = [terms[n] for n in names]
    if rel == "=":
        mode, k = "eq", constant
    elif rel == "<=":
        mode, k = "le", constant
    elif rel == "<":
        mode, k = "le", constant - 1
    elif rel == ">=":
        coeffs = [-c for c in coeffs]
        mode, k = "le", -constant
    else:  # ">"
        coeffs = [-c for c in coeffs]
        mode, k = "le", -constant - 1
    lsd = _lsd_residual(tracks, coeffs, mode, k)
    return minimize(determinize(reverse(lsd)))


def _lsd_residual(tracks, coeffs, mode, start):
    """Deterministic automaton reading digits least significant first.

    State s means: the suffix still to be read (as a number per track) must
    satisfy sum(coeff * value) = s (mode "eq") or <= s (mode "le").  Reading
    one digit tuple d with value contribution sum(coeff * d_i) rewrites the
    constraint for the quotient by the base.
    """
    base = tracks[0].base
    digit_sums = [
        sum(c * d for c, d in zip(coeffs, sym))
        for sym in itertools.product(range(base), repeat=len(coeffs))
    ]
    width = len(digit_sums)
    dead = "dead"
    ids = {start: 0}
    order = [start]
    matrix = []
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        if s is dead:
            matrix.append([ids[dead]] * width)
            continue
        row = []
        for contrib in digit_sums:
            c = s - contrib
            if mode == "eq" and c % base:
                nxt = dead
            else:
                nxt = c // base  # floor division keeps "le" exact
            t = ids.get(nxt)
            if t is None:
                t = len(order)
                ids[nxt] = t
                order.append(nxt)
            row.append(t)
        matrix.append(row)
    accepting = {
        idx
        for idx, s in enumerate(order)
        if s is not dead and ((mode == "eq" and s == 0) or (mode == "le" and s >= 0))
    }
    return MultiTrackAutomaton(tuple(tracks), len(order), 0, accepting, matrix)


def build_compare(rel: str, system: NumberSystem, names=("x", "y")) -> MultiTrackAutomaton:
    """Digitwise comparator x REL y, built directly in msd order."""
    if rel not in RELATIONS:
        raise CompileError(f"unknown relation {rel!r}")
    if names[0] >= names[1]:
        raise AutomatonError("comparator track names must be given in sorted order")
    tracks = (Track(names[0], system), Track(names[1], system))
    b = system.base
    # state 0: equal so far, 1: first is smaller, 2: first is larger
    matrix = []
    for q in range(3):
        row = []
        for dx in range(b):
            for dy in range(b):
                if q == 0:
                    row.append(0 if dx == dy else (1 if dx < dy else 2))
                else:
                    row.append(q)
        matrix.append(row)
    accepting = {
        "=": {0},
        "!=": {1, 2},
        "<": {1},
        "<=": {0, 1},
        ">": {2},
        ">=": {0, 2},
    }[rel]
    return minimize(MultiTrackAutomaton(tracks, 3, 0, accepting, matrix))


def build_add(system: NumberSystem, names=("x", "y", "z")) -> MultiTrackAutomaton:
    """Addition relation x + y = z from the classic carry automaton.

    The carry machine naturally reads digits least significant first, so it
    is built that way and then reversed and determinized for msd input.
    """
    if list(names) != sorted(names):
        raise AutomatonError("adder track names must be given in sorted order")
    tracks = tuple(Track(n, system) for n in names)
    b = system.base
    # states: carry 0, carry 1, dead
    matrix = []
    for q in range(3):
        row = []
        for dx in range(b):
            for dy in range(b):
                for dz in range(b):
                    if q == 2:
                        row.append(2)
                        continue
                    total = dx + dy + q
                    if total % b == dz % b and (total - dz) in (0, b):
                        row.append((total - dz) // b)
                    else:
                        row.append(2)
        matrix.append(row)
    lsd = MultiTrackAutomaton(tracks, 3, 0, {0}, matrix)
    return minimize(determinize(reverse(lsd)))


def build_const_mul(c: int, system: NumberSystem, names=("x", "y")) -> MultiTrackAutomaton:
    """Relation c * first = second, assembled by a doubling chain of adders.

    Even factors go through t = (c/2) * x and t + t = y; odd factors peel a
    single addition off.  Intermediate sums live on a scratch track that is
    projected away again at every step.
    """
    if c < 0:
        raise CompileError("constant factors are natural numbers")
    if names[0] == names[1]:
        raise AutomatonError("input and output tracks must differ")
    chain = _const_mul_chain(c, system)
    return minimize(chain.renamed({"in": names[0], "out": names[1]}))


def _const_mul_chain(c: int, system: NumberSystem) -> MultiTrackAutomaton:
    if c == 0:
        return product(
            _trivial((Track("in", system),), True),
            linear_atom({"out": 1}, "=", 0, system),
            OP_AND,
        )
    if c == 1:
        return build_compare("=", system, ("in", "out"))
    if c % 2 == 0:
        half = _const_mul_chain(c // 2, system).renamed({"out": "mid"})
        add = build_add(system, ("a", "b", "c")).renamed({"a": "mid", "b": "mid", "c": "out"})
        step = product(half, add, OP_AND)
    else:
        prev = _const_mul_chain(c - 1, system).renamed({"out": "mid"})
        add = build_add(system, ("a", "b", "c")).renamed({"a": "mid", "b": "in", "c": "out"})
        step = product(prev, add, OP_AND)
    return minimize(project(step, "mid"))
