"""Deterministic multi-track automata over tuples of base-k digits.

A word is a sequence of digit tuples, one digit per track, most significant
digit first.  A tuple of natural numbers is encoded by writing each number in
its track's base and left-padding every track with zeros to a common length;
the number 0 is the empty string.  All automata built here are kept complete
(every state has a successor on every tuple) and, once minimized, padding
closed: prepending the all-zero tuple never changes membership, so any
sufficiently long common padding encodes the same tuple of values.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass

from .errors import AutomatonError, BaseMismatchError, RegexError

__all__ = [
    "NumberSystem",
    "Track",
    "MultiTrackAutomaton",
    "Nfa",
    "OutputAutomaton",
    "product",
    "complement",
    "project",
    "determinize",
    "minimize",
    "reverse",
    "is_empty",
    "language_equal",
    "find_witness",
    "from_regex",
    "to_digits",
    "from_digits",
    "encode_values",
    "decode_word",
]


@dataclass(frozen=True)
class NumberSystem:
    """Positional numeration in a fixed base, most significant digit first."""

    base: int

    def __post_init__(self):
        if self.base < 2:
            raise BaseMismatchError(f"base must be at least 2, got {self.base}")

    @classmethod
    def parse(cls, text: str) -> "NumberSystem":
        m = re.fullmatch(r"msd_(\d+)", text.strip())
        if not m:
            raise BaseMismatchError(f"unknown number system {text!r}")
        return cls(int(m.group(1)))

    def __str__(self):
        return f"msd_{self.base}"


@dataclass(frozen=True)
class Track:
    """A named component of a multi-track alphabet."""

    name: str
    system: NumberSystem

    @property
    def base(self) -> int:
        return self.system.base


def to_digits(n: int, base: int) -> list[int]:
    """Canonical msd-first digits of n; 0 is the empty string."""
    if n < 0:
        raise ValueError("only natural numbers have digit strings")
    out = []
    while n:
        n, d = divmod(n, base)
        out.append(d)
    out.reverse()
    return out


def from_digits(digits, base: int) -> int:
    n = 0
    for d in digits:
        if not 0 <= d < base:
            raise ValueError(f"digit {d} out of range for base {base}")
        n = n * base + d
    return n


def encode_values(tracks, values, length: int | None = None) -> list[tuple]:
    """Zero-padded tuple word encoding the given values, one per track."""
    if len(values) != len(tracks):
        raise ValueError("one value per track required")
    per = [to_digits(v, t.base) for v, t in zip(values, tracks)]
    need = max((len(p) for p in per), default=0)
    if length is None:
        length = need
    elif length < need:
        raise ValueError(f"length {length} too short, need {need}")
    padded = [[0] * (length - len(p)) + p for p in per]
    return [tuple(col) for col in zip(*padded)] if length else []


def decode_word(tracks, word) -> tuple[int, ...]:
    """Per-track values encoded by a tuple word."""
    return tuple(
        from_digits((sym[i] for sym in word), t.base) for i, t in enumerate(tracks)
    )


def _check_tracks(tracks):
    names = [t.name for t in tracks]
    if len(set(names)) != len(names):
        raise AutomatonError(f"duplicate track names in {names}")


class MultiTrackAutomaton:
    """A complete deterministic automaton over digit tuples.

    transitions are stored densely: ``matrix[state][symbol_index]`` where
    symbol indices enumerate the tuple alphabet in lexicographic order.
    Instances are treated as immutable once constructed.
    """

    __slots__ = ("tracks", "n_states", "initial", "accepting", "matrix", "_alphabet")

    def __init__(self, tracks, n_states, initial, accepting, matrix):
        tracks = tuple(tracks)
        _check_tracks(tracks)
        self.tracks = tracks
        self.n_states = n_states
        self.initial = initial
        self.accepting = frozenset(accepting)
        self.matrix = matrix
        self._alphabet = None
        if not 0 <= initial < n_states:
            raise AutomatonError("initial state out of range")
        if len(matrix) != n_states:
            raise AutomatonError("one transition row per state required")
        width = self.alphabet_size
        for row in matrix:
            if len(row) != width:
                raise AutomatonError("automaton must be complete")

    @property
    def bases(self) -> tuple[int, ...]:
        return tuple(t.base for t in self.tracks)

    @property
    def alphabet_size(self) -> int:
        size = 1
        for b in self.bases:
            size *= b
        return size

    @property
    def alphabet(self) -> tuple[tuple, ...]:
        if self._alphabet is None:
            self._alphabet = tuple(itertools.product(*(range(b) for b in self.bases)))
        return self._alphabet

    def symbol_index(self, sym) -> int:
        idx = 0
        for d, b in zip(sym, self.bases):
            if not 0 <= d < b:
                raise AutomatonError(f"digit tuple {sym} out of range for {self.bases}")
            idx = idx * b + d
        return idx

    def step(self, state: int, sym) -> int:
        return self.matrix[state][self.symbol_index(sym)]

    def walk(self, word, start: int | None = None) -> int:
        q = self.initial if start is None else start
        for sym in word:
            q = self.matrix[q][self.symbol_index(sym)]
        return q

    def accepts(self, word) -> bool:
        return self.walk(word) in self.accepting

    def accepts_values(self, values, extra_padding: int = 0) -> bool:
        word = encode_values(self.tracks, values)
        if extra_padding:
            word = [tuple([0] * len(self.tracks))] * extra_padding + word
        return self.accepts(word)

    def track_index(self, name: str) -> int:
        for i, t in enumerate(self.tracks):
            if t.name == name:
                return i
        raise AutomatonError(f"no track named {name!r} in {[t.name for t in self.tracks]}")

    def renamed(self, mapping) -> "MultiTrackAutomaton":
        """Rename tracks and restore sorted-by-name track order.

        Renaming two tracks to the same name intersects them with the
        diagonal: only tuples whose merged components agree survive, others
        are redirected to a fresh rejecting sink.
        """
        new_names = [mapping.get(t.name, t.name) for t in self.tracks]
        merged: dict[str, NumberSystem] = {}
        for name, tr in zip(new_names, self.tracks):
            if name in merged and merged[name] != tr.system:
                raise BaseMismatchError(
                    f"cannot merge track {name!r} across bases "
                    f"{merged[name]} and {tr.system}"
                )
            merged[name] = tr.system
        out_tracks = tuple(
            Track(name, merged[name]) for name in sorted(merged)
        )
        # source tuple positions feeding each output track; a name shared by
        # several positions receives the same digit on all of them, which is
        # exactly the diagonal restriction
        sources = {name: [i for i, n in enumerate(new_names) if n == name] for name in merged}
        out_alpha = tuple(
            itertools.product(*(range(t.base) for t in out_tracks))
        )
        src_index = []
        for sym in out_alpha:
            digits = [0] * len(self.tracks)
            for value, track in zip(sym, out_tracks):
                for pos in sources[track.name]:
                    digits[pos] = value
            src_index.append(self.symbol_index(tuple(digits)))
        matrix = [
            [self.matrix[q][j] for j in src_index] for q in range(self.n_states)
        ]
        return MultiTrackAutomaton(
            out_tracks, self.n_states, self.initial, self.accepting, matrix
        )

    def is_padding_closed(self) -> bool:
        """True iff prepending the all-zero tuple never changes membership."""
        m = minimize(self)
        zero = m.matrix[m.initial][0]
        return zero == m.initial

    def to_text(self) -> str:
        """Serialize; track names are not stored, only their number systems."""
        lines = [" ".join(str(t.system) for t in self.tracks)]
        alpha = self.alphabet
        for q in range(self.n_states):
            lines.append(f"{q} {1 if q in self.accepting else 0}")
            row = self.matrix[q]
            for j, sym in enumerate(alpha):
                digits = " ".join(str(d) for d in sym) if sym else "-"
                lines.append(f"{digits} -> {row[j]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, names=None) -> "MultiTrackAutomaton":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise AutomatonError("empty automaton file")
        systems = [NumberSystem.parse(tok) for tok in lines[0].split()]
        if names is None:
            names = [f"t{i}" for i in range(len(systems))]
        tracks = tuple(Track(n, s) for n, s in zip(names, systems))
        shell = cls(tracks, 1, 0, frozenset(), [[0] * _alpha_size(tracks)])
        outputs: dict[int, int] = {}
        trans: dict[tuple[int, int], int] = {}
        state = None
        for ln in lines[1:]:
            if "->" in ln:
                left, right = ln.split("->")
                digits = left.split()
                sym = () if digits == ["-"] else tuple(int(d) for d in digits)
                trans[(state, shell.symbol_index(sym))] = int(right)
            else:
                q, out = ln.split()
                state = int(q)
                outputs[state] = int(out)
        n = max(outputs) + 1
        width = shell.alphabet_size
        matrix = [[None] * width for _ in range(n)]
        for (q, j), q2 in trans.items():
            matrix[q][j] = q2
        if any(cell is None for row in matrix for cell in row):
            # complete with a fresh rejecting sink
            sink = n
            matrix.append([sink] * width)
            for row in matrix:
                for j, cell in enumerate(row):
                    if cell is None:
                        row[j] = sink
            n += 1
        accepting = frozenset(q for q, out in outputs.items() if out)
        return cls(tracks, n, 0, accepting, matrix)

    def __repr__(self):
        sig = ",".join(f"{t.name}:{t.system}" for t in self.tracks)
        return f"<MultiTrackAutomaton [{sig}] {self.n_states} states>"


def _alpha_size(tracks) -> int:
    size = 1
    for t in tracks:
        size *= t.base
    return size


class Nfa:
    """Nondeterministic counterpart used internally by projection and regex.

    ``trans`` maps (state, symbol_index) to a frozenset of successors;
    missing entries mean no successor.
    """

    __slots__ = ("tracks", "n_states", "initial", "accepting", "trans")

    def __init__(self, tracks, n_states, initial, accepting, trans):
        self.tracks = tuple(tracks)
        _check_tracks(self.tracks)
        self.n_states = n_states
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        self.trans = trans

    @property
    def bases(self):
        return tuple(t.base for t in self.tracks)

    @property
    def alphabet_size(self):
        return _alpha_size(self.tracks)


OP_AND = lambda x, y: x and y
OP_OR = lambda x, y: x or y
OP_XOR = lambda x, y: x != y
OP_IMPLIES = lambda x, y: (not x) or y
OP_IFF = lambda x, y: x == y


def _merge_tracks(a_tracks, b_tracks):
    by_name: dict[str, NumberSystem] = {}
    for t in list(a_tracks) + list(b_tracks):
        if t.name in by_name:
            if by_name[t.name] != t.system:
                raise BaseMismatchError(
                    f"track {t.name!r} used with both {by_name[t.name]} and {t.system}"
                )
        else:
            by_name[t.name] = t.system
    return tuple(Track(name, by_name[name]) for name in sorted(by_name))


def _projection_table(merged, part):
    """For each merged symbol index, the symbol index seen by ``part``."""
    positions = [next(i for i, t in enumerate(merged) if t.name == p.name) for p in part]
    bases = [t.base for t in part]
    table = []
    for sym in itertools.product(*(range(t.base) for t in merged)):
        idx = 0
        for pos, b in zip(positions, bases):
            idx = idx * b + sym[pos]
        table.append(idx)
    return table


def product(a: MultiTrackAutomaton, b: MultiTrackAutomaton, op) -> MultiTrackAutomaton:
    """Synchronous product over the union of the two track sets.

    Tracks are matched by name; each operand ignores digits on tracks it
    does not carry.  ``op`` combines acceptance of the two parts.  Only
    state pairs reachable from the initial pair are materialized.
    """
    merged = _merge_tracks(a.tracks, b.tracks)
    ta = _projection_table(merged, a.tracks)
    tb = _projection_table(merged, b.tracks)
    width = len(ta)
    amat, bmat = a.matrix, b.matrix
    ids: dict[tuple[int, int], int] = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    matrix = []
    frontier = deque(order)
    while frontier:
        qa, qb = frontier.popleft()
        rowa, rowb = amat[qa], bmat[qb]
        row = []
        for j in range(width):
            pair = (rowa[ta[j]], rowb[tb[j]])
            s = ids.get(pair)
            if s is None:
                s = len(order)
                ids[pair] = s
                order.append(pair)
                frontier.append(pair)
            row.append(s)
        matrix.append(row)
    acc_a, acc_b = a.accepting, b.accepting
    accepting = frozenset(
        i for i, (qa, qb) in enumerate(order) if op(qa in acc_a, qb in acc_b)
    )
    return MultiTrackAutomaton(merged, len(order), 0, accepting, matrix)


def complement(a: MultiTrackAutomaton) -> MultiTrackAutomaton:
    """Flip acceptance; sound because every automaton here is complete."""
    if isinstance(a, Nfa):
        raise AutomatonError("complement needs a deterministic automaton; determinize first")
    acc = frozenset(range(a.n_states)) - a.accepting
    return MultiTrackAutomaton(a.tracks, a.n_states, a.initial, acc, a.matrix)


def determinize(nfa: Nfa) -> MultiTrackAutomaton:
    """Subset construction; the empty subset becomes the rejecting sink."""
    if isinstance(nfa, MultiTrackAutomaton):
        return nfa
    width = nfa.alphabet_size
    trans = nfa.trans
    start = frozenset(nfa.initial)
    ids: dict[frozenset, int] = {start: 0}
    order = [start]
    matrix = []
    frontier = deque([start])
    empty = frozenset()
    while frontier:
        subset = frontier.popleft()
        row = []
        for j in range(width):
            nxt = set()
            for q in subset:
                nxt.update(trans.get((q, j), empty))
            nxt = frozenset(nxt)
            s = ids.get(nxt)
            if s is None:
                s = len(order)
                ids[nxt] = s
                order.append(nxt)
                frontier.append(nxt)
            row.append(s)
        matrix.append(row)
    acc = nfa.accepting
    accepting = frozenset(i for i, subset in enumerate(order) if subset & acc)
    return MultiTrackAutomaton(nfa.tracks, len(order), 0, accepting, matrix)


def project(a: MultiTrackAutomaton, name: str) -> MultiTrackAutomaton:
    """Existentially remove one track.

    Removing a track can strand witnesses that needed more digits than the
    remaining tracks, so before subset construction the initial set is closed
    under transitions whose remaining digits are all zero: the result then
    accepts w exactly when some zero-padding of w extends to an accepted
    full word.
    """
    pos = a.track_index(name)
    rest = tuple(t for i, t in enumerate(a.tracks) if i != pos)
    shell_width = _alpha_size(rest)
    rest_bases = [t.base for t in rest]
    # map each full symbol index to the projected symbol index
    proj = []
    zero_syms = []
    for j, sym in enumerate(a.alphabet):
        out = 0
        all_zero = True
        for i, d in enumerate(sym):
            if i == pos:
                continue
            b = a.tracks[i].base
            out = out * b + d
            if d:
                all_zero = False
        proj.append(out)
        if all_zero:
            zero_syms.append(j)
    trans: dict[tuple[int, int], set] = {}
    for q in range(a.n_states):
        row = a.matrix[q]
        for j, target in enumerate(row):
            key = (q, proj[j])
            bucket = trans.get(key)
            if bucket is None:
                trans[key] = {target}
            else:
                bucket.add(target)
    # close the initial set under leading zero padding
    initial = {a.initial}
    frontier = deque(initial)
    while frontier:
        q = frontier.popleft()
        row = a.matrix[q]
        for j in zero_syms:
            t = row[j]
            if t not in initial:
                initial.add(t)
                frontier.append(t)
    nfa = Nfa(
        rest,
        a.n_states,
        initial,
        a.accepting,
        {k: frozenset(v) for k, v in trans.items()},
    )
    out = determinize(nfa)
    assert out.alphabet_size == shell_width
    return out


def reverse(a: MultiTrackAutomaton) -> Nfa:
    """Reversal: accepts mirror images of the words ``a`` accepts."""
    trans: dict[tuple[int, int], set] = {}
    for q in range(a.n_states):
        for j, t in enumerate(a.matrix[q]):
            trans.setdefault((t, j), set()).add(q)
    return Nfa(
        a.tracks,
        a.n_states,
        a.accepting,
        {a.initial},
        {k: frozenset(v) for k, v in trans.items()},
    )


def _reachable(a: MultiTrackAutomaton):
    seen = [False] * a.n_states
    seen[a.initial] = True
    order = [a.initial]
    frontier = deque(order)
    while frontier:
        q = frontier.popleft()
        for t in a.matrix[q]:
            if not seen[t]:
                seen[t] = True
                order.append(t)
                frontier.append(t)
    return order


def minimize(a: MultiTrackAutomaton) -> MultiTrackAutomaton:
    """Unique minimal complete automaton, states renumbered canonically.

    Unreachable states are dropped, Hopcroft partition refinement merges
    indistinguishable states, and states are finally renumbered in breadth
    first order from the initial state (symbols in lexicographic order), so
    equal languages always serialize to identical bytes.
    """
    reach = _reachable(a)
    remap = {q: i for i, q in enumerate(reach)}
    n = len(reach)
    width = a.alphabet_size
    matrix = [[remap[t] for t in a.matrix[q]] for q in reach]
    accepting = {remap[q] for q in a.accepting if q in remap}
    initial = remap[a.initial]

    # Hopcroft refinement
    preimage = [[[] for _ in range(n)] for _ in range(width)]
    for q in range(n):
        row = matrix[q]
        for j in range(width):
            preimage[j][row[j]].append(q)

    fin = set(accepting)
    nonfin = set(range(n)) - fin
    partition = [s for s in (fin, nonfin) if s]
    class_of = [0] * n
    for cid, block in enumerate(partition):
        for q in block:
            class_of[q] = cid
    work = deque()
    in_work = set()
    if len(partition) == 2:
        smaller = 0 if len(partition[0]) <= len(partition[1]) else 1
        work.append(smaller)
        in_work.add(smaller)
    elif partition:
        work.append(0)
        in_work.add(0)
    while work:
        aid = work.popleft()
        in_work.discard(aid)
        splitter = list(partition[aid])
        for j in range(width):
            x = set()
            pre_j = preimage[j]
            for q in splitter:
                x.update(pre_j[q])
            if not x:
                continue
            touched = {}
            for q in x:
                touched.setdefault(class_of[q], set()).add(q)
            for cid, hit in touched.items():
                block = partition[cid]
                if len(hit) == len(block):
                    continue
                rest = block - hit
                new_id = len(partition)
                partition[cid] = hit
                partition.append(rest)
                for q in rest:
                    class_of[q] = new_id
                if cid in in_work:
                    work.append(new_id)
                    in_work.add(new_id)
                else:
                    small = cid if len(hit) <= len(rest) else new_id
                    work.append(small)
                    in_work.add(small)

    # canonical breadth-first renumbering over the quotient
    rep = {}
    for q in range(n):
        rep.setdefault(class_of[q], q)
    start = class_of[initial]
    new_id = {start: 0}
    order = [start]
    frontier = deque(order)
    while frontier:
        cid = frontier.popleft()
        row = matrix[rep[cid]]
        for j in range(width):
            t = class_of[row[j]]
            if t not in new_id:
                new_id[t] = len(order)
                order.append(t)
                frontier.append(t)
    out_matrix = []
    for cid in order:
        row = matrix[rep[cid]]
        out_matrix.append([new_id[class_of[t]] for t in row])
    out_acc = frozenset(
        new_id[cid] for cid in order if rep[cid] in accepting
    )
    return MultiTrackAutomaton(a.tracks, len(order), 0, out_acc, out_matrix)


def is_empty(a: MultiTrackAutomaton) -> bool:
    if a.initial in a.accepting:
        return False
    for q in _reachable(a):
        if q in a.accepting:
            return False
    return True


def _check_comparable(a, b):
    if len(a.tracks) != len(b.tracks) or a.bases != b.bases:
        raise BaseMismatchError(
            f"automata read different alphabets: {a.bases} vs {b.bases}"
        )


def language_equal(a: MultiTrackAutomaton, b: MultiTrackAutomaton) -> bool:
    """Language equality, compared positionally (track names are ignored)."""
    _check_comparable(a, b)
    if a.tracks != b.tracks:
        b = MultiTrackAutomaton(a.tracks, b.n_states, b.initial, b.accepting, b.matrix)
    return is_empty(product(a, b, OP_XOR))


def find_witness(a: MultiTrackAutomaton):
    """Shortest accepted word (symbols tried in lexicographic order).

    Returns None for the empty language.  On padding-closed automata a
    shortest witness never starts with the all-zero tuple unless it is empty.
    """
    if a.initial in a.accepting:
        return []
    parent: dict[int, tuple[int, int]] = {a.initial: (-1, -1)}
    frontier = deque([a.initial])
    alpha = a.alphabet
    goal = None
    while frontier and goal is None:
        q = frontier.popleft()
        row = a.matrix[q]
        for j, t in enumerate(row):
            if t not in parent:
                parent[t] = (q, j)
                if t in a.accepting:
                    goal = t
                    break
                frontier.append(t)
    if goal is None:
        return None
    word = []
    q = goal
    while parent[q][0] != -1:
        prev, j = parent[q]
        word.append(alpha[j])
        q = prev
    word.reverse()
    return word


# --- regex over digit tuples ---------------------------------------------

_EPS = None


class _Frag:
    __slots__ = ("start", "outs")

    def __init__(self, start, outs):
        self.start = start
        self.outs = outs


class _RegexBuilder:
    def __init__(self, tracks):
        self.tracks = tuple(tracks)
        self.n = 0
        self.edges: dict[int, list[tuple[int | None, int]]] = {}
        shell_bases = [t.base for t in self.tracks]
        self.bases = shell_bases

    def new_state(self):
        q = self.n
        self.n += 1
        self.edges[q] = []
        return q

    def add_edge(self, src, sym, dst):
        self.edges[src].append((sym, dst))

    def symbol_index(self, digits):
        idx = 0
        for d, b in zip(digits, self.bases):
            if not 0 <= d < b:
                raise RegexError(f"digit tuple {digits} out of range for bases {self.bases}")
            idx = idx * b + d
        return idx


def _parse_regex(text: str, n_tracks: int):
    """Parse into an AST of ('sym', digits) / ('cat'|'alt', l, r) / ('star', x) / ('eps',)."""
    pos = 0

    def peek():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1
        return text[pos] if pos < len(text) else ""

    def parse_alt():
        nonlocal pos
        node = parse_cat()
        while peek() == "|":
            pos += 1
            node = ("alt", node, parse_cat())
        return node

    def parse_cat():
        nonlocal pos
        parts = []
        while True:
            c = peek()
            if c in ("", ")", "|"):
                break
            parts.append(parse_star())
        if not parts:
            return ("eps",)
        node = parts[0]
        for p in parts[1:]:
            node = ("cat", node, p)
        return node

    def parse_star():
        nonlocal pos
        node = parse_atom()
        while peek() == "*":
            pos += 1
            node = ("star", node)
        return node

    def parse_atom():
        nonlocal pos
        c = peek()
        if c == "(":
            pos += 1
            node = parse_alt()
            if peek() != ")":
                raise RegexError(f"unbalanced parenthesis in {text!r}")
            pos += 1
            return node
        if c == "[":
            pos += 1
            digits = []
            while True:
                c = peek()
                if c == "]":
                    pos += 1
                    break
                if c == ",":
                    pos += 1
                    continue
                m = re.match(r"\d+", text[pos:])
                if not m:
                    raise RegexError(f"expected digit in tuple literal of {text!r}")
                digits.append(int(m.group()))
                pos += len(m.group())
            if len(digits) != n_tracks:
                raise RegexError(
                    f"tuple literal {digits} has {len(digits)} digits, expected {n_tracks}"
                )
            return ("sym", tuple(digits))
        if c.isdigit():
            if n_tracks != 1:
                raise RegexError(
                    "bare digits are only allowed for single-track patterns; use [..] tuples"
                )
            pos += 1
            return ("sym", (int(c),))
        raise RegexError(f"unexpected character {c!r} in pattern {text!r}")

    node = parse_alt()
    if peek():
        raise RegexError(f"trailing input in pattern {text!r}")
    return node


def _thompson(builder: _RegexBuilder, node) -> _Frag:
    kind = node[0]
    if kind == "eps":
        q = builder.new_state()
        return _Frag(q, [q])
    if kind == "sym":
        q1, q2 = builder.new_state(), builder.new_state()
        builder.add_edge(q1, builder.symbol_index(node[1]), q2)
        return _Frag(q1, [q2])
    if kind == "cat":
        left = _thompson(builder, node[1])
        right = _thompson(builder, node[2])
        for out in left.outs:
            builder.add_edge(out, _EPS, right.start)
        return _Frag(left.start, right.outs)
    if kind == "alt":
        left = _thompson(builder, node[1])
        right = _thompson(builder, node[2])
        q = builder.new_state()
        builder.add_edge(q, _EPS, left.start)
        builder.add_edge(q, _EPS, right.start)
        return _Frag(q, left.outs + right.outs)
    if kind == "star":
        inner = _thompson(builder, node[1])
        q = builder.new_state()
        builder.add_edge(q, _EPS, inner.start)
        for out in inner.outs:
            builder.add_edge(out, _EPS, q)
        return _Frag(q, [q])
    raise RegexError(f"unknown regex node {kind}")


def from_regex(systems, pattern: str, names=None) -> MultiTrackAutomaton:
    """Compile a tuple-literal regular expression, then close it under padding.

    ``systems`` lists one number system per track (objects or "msd_k"
    strings).  The language of the pattern is first interpreted literally,
    then closed so that leading all-zero tuples may be freely added or
    removed: the result accepts exactly the encodings of the values the
    pattern denotes.  The automaton returned is deterministic, complete and
    minimal.
    """
    parsed = [
        NumberSystem.parse(s) if isinstance(s, str) else s for s in systems
    ]
    if names is None:
        names = [f"t{i}" for i in range(len(parsed))]
    tracks = [Track(n, s) for n, s in zip(names, parsed)]
    builder = _RegexBuilder(tracks)
    frag = _thompson(builder, _parse_regex(pattern, len(tracks)))
    final = builder.new_state()
    for out in frag.outs:
        builder.add_edge(out, _EPS, final)

    def eps_closure(states):
        seen = set(states)
        frontier = deque(states)
        while frontier:
            q = frontier.popleft()
            for sym, dst in builder.edges[q]:
                if sym is _EPS and dst not in seen:
                    seen.add(dst)
                    frontier.append(dst)
        return seen

    zero = 0  # symbol index of the all-zero tuple
    # states reachable from the start via leading zero tuples
    closure = eps_closure({frag.start})
    while True:
        step = set()
        for q in closure:
            for sym, dst in builder.edges[q]:
                if sym == zero:
                    step.add(dst)
        step = eps_closure(step)
        if step <= closure:
            break
        closure |= step

    # NFA without epsilon edges, with a fresh start absorbing leading zeros
    width = _alpha_size(tracks)
    trans: dict[tuple[int, int], set] = {}
    for q in range(builder.n):
        base = eps_closure({q})
        for p in base:
            for sym, dst in builder.edges[p]:
                if sym is not _EPS:
                    trans.setdefault((q, sym), set()).update(eps_closure({dst}))
    fresh = builder.n
    moves_from_closure: dict[int, set] = {}
    for q in closure:
        for sym, dst in builder.edges[q]:
            if sym is not _EPS:
                moves_from_closure.setdefault(sym, set()).update(eps_closure({dst}))
    for sym, dsts in moves_from_closure.items():
        trans.setdefault((fresh, sym), set()).update(dsts)
    trans.setdefault((fresh, zero), set()).add(fresh)
    accepting = {final}
    if final in closure:
        accepting.add(fresh)
    nfa = Nfa(
        tracks,
        builder.n + 1,
        {fresh},
        accepting,
        {k: frozenset(v) for k, v in trans.items()},
    )
    return minimize(determinize(nfa))


# --- automata with output ------------------------------------------------


class OutputAutomaton:
    """Single-track complete automaton labelling each state with an output."""

    __slots__ = ("track", "n_states", "initial", "outputs", "matrix")

    def __init__(self, track: Track, n_states, initial, outputs, matrix):
        self.track = track
        self.n_states = n_states
        self.initial = initial
        self.outputs = tuple(outputs)
        self.matrix = matrix
        if len(self.outputs) != n_states or len(matrix) != n_states:
            raise AutomatonError("outputs and transitions must cover every state")

    @property
    def base(self):
        return self.track.base

    def value(self, n: int) -> int:
        q = self.initial
        for d in to_digits(n, self.base):
            q = self.matrix[q][d]
        return self.outputs[q]

    def value_of_word(self, word) -> int:
        q = self.initial
        for d in word:
            q = self.matrix[q][d if isinstance(d, int) else d[0]]
        return self.outputs[q]

    def where(self, value: int, name: str | None = None) -> MultiTrackAutomaton:
        """Recognizer for the arguments mapped to ``value``."""
        track = self.track if name is None else Track(name, self.track.system)
        acc = frozenset(q for q in range(self.n_states) if self.outputs[q] == value)
        return MultiTrackAutomaton(
            (track,), self.n_states, self.initial, acc, [list(r) for r in self.matrix]
        )

    def minimized(self) -> "OutputAutomaton":
        """Moore minimization: initial partition groups states by output."""
        # encode outputs as acceptance classes via a product trick: refine
        # manually since the recognizer machinery only knows two classes.
        n, width = self.n_states, self.base
        class_of = {}
        classes: dict[int, int] = {}
        for q in range(n):
            classes.setdefault(self.outputs[q], len(classes))
        part = [classes[self.outputs[q]] for q in range(n)]
        while True:
            sigs = {}
            new_part = [0] * n
            for q in range(n):
                sig = (part[q], tuple(part[t] for t in self.matrix[q]))
                new_part[q] = sigs.setdefault(sig, len(sigs))
            if new_part == part:
                break
            part = new_part
        # canonical renumber by BFS
        rep = {}
        for q in range(n):
            rep.setdefault(part[q], q)
        start = part[self.initial]
        order = [start]
        new_id = {start: 0}
        frontier = deque(order)
        while frontier:
            cid = frontier.popleft()
            for t in self.matrix[rep[cid]]:
                tid = part[t]
                if tid not in new_id:
                    new_id[tid] = len(order)
                    order.append(tid)
                    frontier.append(tid)
        matrix = [
            [new_id[part[t]] for t in self.matrix[rep[cid]]] for cid in order
        ]
        outputs = [self.outputs[rep[cid]] for cid in order]
        return OutputAutomaton(self.track, len(order), 0, outputs, matrix)

    def to_text(self) -> str:
        lines = [str(self.track.system)]
        for q in range(self.n_states):
            lines.append(f"{q} {self.outputs[q]}")
            for d in range(self.base):
                lines.append(f"{d} -> {self.matrix[q][d]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "t0") -> "OutputAutomaton":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        system = NumberSystem.parse(lines[0])
        track = Track(name, system)
        outputs: dict[int, int] = {}
        trans: dict[tuple[int, int], int] = {}
        state = None
        for ln in lines[1:]:
            if "->" in ln:
                left, right = ln.split("->")
                trans[(state, int(left))] = int(right)
            else:
                q, out = ln.split()
                state = int(q)
                outputs[state] = int(out)
        n = max(outputs) + 1
        matrix = [[trans[(q, d)] for d in range(system.base)] for q in range(n)]
        return cls(track, n, 0, [outputs[q] for q in range(n)], matrix)

    def __repr__(self):
        return f"<OutputAutomaton {self.track.system} {self.n_states} states>"
