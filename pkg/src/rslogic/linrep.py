"""Linear representations counting accepted completions of an automaton.

A representation (v, gammas, w) computes v * gammas(d1) * ... * gammas(dk) * w
over the digit tuples of its listed parameters.  Built from a relation
automaton, the result counts, for each valuation of the listed parameters,
how many valuations of the remaining tracks are accepted alongside it.
Entries are exact rationals so subtraction and minimization stay lossless.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .automata import to_digits
from .errors import CompileError, DivergenceError


@dataclass
class LinearRepresentation:
    initial: list  # 1 x r
    gammas: list  # one r x r matrix per digit tuple, mixed-radix order
    final: list  # r x 1
    systems: list  # number system per listed parameter

    @property
    def rank(self):
        return len(self.initial)

    def symbol_index(self, digits):
        idx = 0
        for d, system in zip(digits, self.systems):
            idx = idx * system.base + d
        return idx

    def to_text(self):
        """Serialize: rank, systems, initial, final, one matrix per digit."""
        lines = [str(self.rank), " ".join(str(s) for s in self.systems)]
        lines.append(" ".join(str(x) for x in self.initial))
        lines.append(" ".join(str(x) for x in self.final))
        for matrix in self.gammas:
            lines.append("")
            for row in matrix:
                lines.append(" ".join(str(x) for x in row))
        return "\n".join(lines) + "\n"


def count_representation(automaton, params):
    """Representation counting accepted completions over unlisted tracks."""
    names = [t.name for t in automaton.tracks]
    missing = [p for p in params if p not in names]
    if missing:
        raise CompileError(f"listed parameters {missing} are not free variables")
    listed = [names.index(p) for p in params]
    counted = [i for i in range(len(names)) if names[i] not in params]

    keep = _trimmed_states(automaton)
    if not keep:
        zero = [[Fraction(0)]]
        return LinearRepresentation(
            [Fraction(0)],
            [zero for _ in _listed_symbols(automaton, listed)],
            [Fraction(0)],
            [automaton.tracks[i].system for i in listed],
        )
    rename = {q: i for i, q in enumerate(sorted(keep))}
    size = len(keep)

    gammas = []
    for listed_digits in _listed_symbols(automaton, listed):
        matrix = [[Fraction(0)] * size for _ in range(size)]
        for counted_digits in itertools.product(
            *(range(automaton.tracks[i].base) for i in counted)
        ):
            sym = [0] * len(names)
            for i, d in zip(listed, listed_digits):
                sym[i] = d
            for i, d in zip(counted, counted_digits):
                sym[i] = d
            idx = automaton.symbol_index(tuple(sym))
            for q in keep:
                dest = automaton.matrix[q][idx]
                if dest in keep:
                    matrix[rename[q]][rename[dest]] += 1
        gammas.append(matrix)

    initial = [Fraction(0)] * size
    initial[rename[automaton.initial]] = Fraction(1)
    final = [Fraction(1) if q in automaton.accepting else Fraction(0) for q in sorted(keep)]
    return LinearRepresentation(
        initial, gammas, final, [automaton.tracks[i].system for i in listed]
    )


def count_linrep(automaton, counted_track, free_track):
    """Representation over free_track counting values of counted_track."""
    names = [t.name for t in automaton.tracks]
    if sorted(names) != sorted([counted_track, free_track]):
        raise CompileError(
            f"expected exactly tracks {counted_track!r} and {free_track!r}, found {names}"
        )
    return count_representation(automaton, [free_track])


def _listed_symbols(automaton, listed):
    return itertools.product(*(range(automaton.tracks[i].base) for i in listed))


def _trimmed_states(automaton):
    reached = {automaton.initial}
    queue = [automaton.initial]
    while queue:
        q = queue.pop()
        for dest in automaton.matrix[q]:
            if dest not in reached:
                reached.add(dest)
                queue.append(dest)
    live = set(automaton.accepting)
    changed = True
    while changed:
        changed = False
        for q in range(automaton.n_states):
            if q not in live and any(dest in live for dest in automaton.matrix[q]):
                live.add(q)
                changed = True
    return reached & live


def _mat_vec(matrix, vec):
    return [sum(row[j] * vec[j] for j in range(len(vec))) for row in matrix]


def _vec_mat(vec, matrix):
    n = len(matrix[0]) if matrix else 0
    return [sum(vec[i] * matrix[i][j] for i in range(len(vec))) for j in range(n)]


def eval_linrep(rep, values, max_padding=None):
    """Value at the given parameter values, padding until the count settles.

    Extra leading zero tuples can only reveal more completions, and the
    padded values obey a linear recurrence of order at most the rank, so
    rank+1 equal consecutive values certify convergence.
    """
    if isinstance(values, int):
        values = (values,)
    if len(values) != len(rep.systems):
        raise CompileError(f"expected {len(rep.systems)} values, got {len(values)}")
    digit_rows = [to_digits(v, s.base) for v, s in zip(values, rep.systems)]
    length = max(len(row) for row in digit_rows)
    digit_rows = [[0] * (length - len(row)) + row for row in digit_rows]

    # suffix product gammas(word) * w once, then prepend zero symbols
    tail = rep.final
    for column in reversed(list(zip(*digit_rows))):
        tail = _mat_vec(rep.gammas[rep.symbol_index(column)], tail)
    zero = rep.gammas[0]
    if max_padding is None:
        max_padding = 3 * rep.rank + 6
    needed = rep.rank + 1
    run = 1
    value = sum(a * b for a, b in zip(rep.initial, tail))
    for _ in range(max_padding):
        if run >= needed:
            break
        tail = _mat_vec(zero, tail)
        nxt = sum(a * b for a, b in zip(rep.initial, tail))
        run = run + 1 if nxt == value else 1
        value = nxt
    else:
        raise DivergenceError(f"count at {values} does not settle under padding")
    if value.denominator != 1:
        raise DivergenceError(f"non-integer count {value} at {values}")
    return int(value)


def subtract(rep1, rep2):
    """Block-diagonal difference rep1 - rep2."""
    if [s.base for s in rep1.systems] != [s.base for s in rep2.systems]:
        raise CompileError("representations read different digit alphabets")
    r1, r2 = rep1.rank, rep2.rank
    initial = list(rep1.initial) + list(rep2.initial)
    final = list(rep1.final) + [-x for x in rep2.final]
    gammas = []
    for g1, g2 in zip(rep1.gammas, rep2.gammas):
        top = [row + [Fraction(0)] * r2 for row in g1]
        bottom = [[Fraction(0)] * r1 + row for row in g2]
        gammas.append(top + bottom)
    return LinearRepresentation(initial, gammas, final, rep1.systems)


class _RowSpace:
    """Echelon row space that can express members in the inserted basis."""

    def __init__(self, width):
        self.width = width
        self.rows = []  # echelon rows
        self.coords = []  # coords[i]: echelon row i in terms of inserted basis
        self.pivots = []
        self.size = 0  # inserted independent vectors

    def _reduce(self, vec):
        vec = list(vec)
        combo = [Fraction(0)] * self.size
        for row, coord, pivot in zip(self.rows, self.coords, self.pivots):
            factor = vec[pivot]
            if factor:
                for j in range(self.width):
                    vec[j] -= factor * row[j]
                for j in range(self.size):
                    combo[j] += factor * coord[j]
        return vec, combo

    def insert(self, vec):
        """Add vec if independent; returns True when the space grew."""
        reduced, combo = self._reduce(vec)
        pivot = next((j for j, x in enumerate(reduced) if x), None)
        if pivot is None:
            return False
        scale = reduced[pivot]
        self.rows.append([x / scale for x in reduced])
        combo = [-c / scale for c in combo] + [Fraction(1) / scale]
        for coord in self.coords:
            coord.append(Fraction(0))
        self.coords.append(combo)
        self.pivots.append(pivot)
        self.size += 1
        return True

    def express(self, vec):
        """Coordinates of vec in the inserted basis (vec must lie inside)."""
        reduced, combo = self._reduce(vec)
        if any(reduced):
            raise ValueError("vector outside the spanned space")
        return combo


def _left_reduce(rep):
    # basis of span{initial * gammas(word)}; empty when initial is zero
    space = _RowSpace(rep.rank)
    basis = []
    if space.insert(rep.initial):
        basis.append(list(rep.initial))
    head = 0
    while head < len(basis):
        row = basis[head]
        head += 1
        for gamma in rep.gammas:
            candidate = _vec_mat(row, gamma)
            if space.insert(candidate):
                basis.append(candidate)
    if not basis:
        zero_sys = rep.systems
        return LinearRepresentation([], [[] for _ in rep.gammas], [], zero_sys)
    gammas = []
    for gamma in rep.gammas:
        gammas.append([space.express(_vec_mat(row, gamma)) for row in basis])
    initial = space.express(rep.initial)
    final = [sum(row[j] * rep.final[j] for j in range(rep.rank)) for row in basis]
    return LinearRepresentation(initial, gammas, final, rep.systems)


def _transposed(rep):
    gammas = [list(map(list, zip(*g))) if g else [] for g in rep.gammas]
    return LinearRepresentation(list(rep.final), gammas, list(rep.initial), rep.systems)


def minimize_schutzenberger(rep):
    """Minimal-rank equivalent representation (exact two-sided reduction)."""
    rep = _left_reduce(rep)
    if rep.rank == 0:
        return rep
    rep = _transposed(_left_reduce(_transposed(rep)))
    return rep


def is_zero(rep):
    return minimize_schutzenberger(rep).rank == 0
