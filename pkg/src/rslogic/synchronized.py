"""Synthesis and inductive verification of synchronized function automata.

A function f is synchronized when a two-track automaton reading n and f(n)
in parallel accepts exactly the graph of f.  guess_sync builds a candidate
by exploring prefix residuals: the residual of a prefix pair (N, X) depends
only on those two values, and two prefixes are merged when probing all
suffixes up to a fixed depth cannot tell them apart.  The guess is unsound
on its own; verify_sync settles it by deciding totality, functionality, the
base case, and both inductive steps as sentences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .automata import MultiTrackAutomaton, NumberSystem, Track, minimize, to_digits
from .errors import FunctionalityError, GuessFailedError
from .logic import Environment, compile_formula, find_counterexample
from .sequences import rudin_shapiro_dfao4

__all__ = [
    "guess_sync",
    "sync_eval",
    "sync_table",
    "verify_sync",
    "verify_sync_s",
    "verify_sync_t",
    "define_derived_sync",
    "accepting_bit_mutations",
    "VerifyOutcome",
    "CheckOutcome",
]


def guess_sync(
    oracle,
    sample_bound=2**14,
    state_cap=64,
    input_system=None,
    output_system=None,
    names=("n", "y"),
    probe_depth=4,
):
    """Candidate automaton for {(n, oracle(n))}, tracks named ``names``.

    States are prefix-value pairs (N, X) identified by their probe
    signature: for every suffix length r <= probe_depth and every input
    suffix M below sample_bound, the output suffix that would complete an
    accepted word, if any.  Equal signatures are merged, so the result is
    only a candidate until verify_sync accepts it.  A candidate that
    cannot even reproduce the sample raises GuessFailedError; growing past
    state_cap does too.
    """
    if input_system is None:
        input_system = NumberSystem(4)
    if output_system is None:
        output_system = NumberSystem(2)
    b_in, b_out = input_system.base, output_system.base

    def signature(N, X):
        rows = []
        for r in range(probe_depth + 1):
            scale_out = b_out**r
            base_in = N * b_in**r
            row = []
            for M in range(b_in**r):
                arg = base_in + M
                if arg >= sample_bound:
                    row.append(None)
                    continue
                owed = oracle(arg) - X * scale_out
                row.append(owed if 0 <= owed < scale_out else None)
            rows.append(tuple(row))
        return tuple(rows)

    index = {}
    reps = []
    matrix = []
    start = signature(0, 0)
    index[start] = 0
    reps.append((0, 0))
    matrix.append(None)
    queue = [0]
    while queue:
        state = queue.pop(0)
        N, X = reps[state]
        row = []
        for d_in in range(b_in):
            for d_out in range(b_out):
                child = (N * b_in + d_in, X * b_out + d_out)
                sig = signature(*child)
                if sig not in index:
                    if len(reps) >= state_cap:
                        raise GuessFailedError(
                            f"more than {state_cap} candidate states; "
                            "raise sample_bound or state_cap"
                        )
                    index[sig] = len(reps)
                    reps.append(child)
                    matrix.append(None)
                    queue.append(index[sig])
                row.append(index[sig])
        matrix[state] = row

    accepting = frozenset(
        q for q, (N, X) in enumerate(reps) if N < sample_bound and oracle(N) == X
    )
    in_name, out_name = names
    tracks = sorted(
        [Track(in_name, input_system), Track(out_name, output_system)],
        key=lambda t: t.name,
    )
    if tracks[0].name == in_name:
        table = matrix
    else:
        # alphabet order follows sorted tracks, so transpose the digit pair
        table = [
            [row[d_in * b_out + d_out] for d_out in range(b_out) for d_in in range(b_in)]
            for row in matrix
        ]
    candidate = minimize(MultiTrackAutomaton(tracks, len(reps), 0, accepting, table))
    # the guess must at least reproduce the sample it was built from
    try:
        found = sync_table(candidate, sample_bound, input_track=in_name)
    except FunctionalityError as exc:
        raise GuessFailedError(f"candidate disagrees with the sample: {exc}") from exc
    bad = next((n for n in range(sample_bound) if found[n] != oracle(n)), None)
    if bad is not None:
        raise GuessFailedError(
            f"candidate computes {found[bad]} at {bad} but the sample says {oracle(bad)}"
        )
    return candidate


def _track_positions(automaton, input_track, output_track):
    names = [t.name for t in automaton.tracks]
    if len(names) != 2:
        raise FunctionalityError(f"expected 2 tracks, found {names}")
    if input_track is None:
        input_track, output_track = names
    elif output_track is None:
        output_track = next(n for n in names if n != input_track)
    return names.index(input_track), names.index(output_track)


def sync_eval(automaton, n, input_track=None, output_track=None):
    """The unique y with (n, y) accepted; FunctionalityError otherwise."""
    pos_in, pos_out = _track_positions(automaton, input_track, output_track)
    b_in = automaton.tracks[pos_in].base
    b_out = automaton.tracks[pos_out].base
    digits = to_digits(n, b_in)
    for extra in (3, 9):
        found = _run_frontier(automaton, [0] * extra + digits, pos_in, pos_out, b_in, b_out)
        if len(found) == 1:
            return found.pop()
        if len(found) > 1:
            raise FunctionalityError(f"{sorted(found)} all accepted for input {n}")
    raise FunctionalityError(f"no accepted output for input {n}")


def _live_states(automaton):
    live = set(automaton.accepting)
    changed = True
    while changed:
        changed = False
        for q in range(automaton.n_states):
            if q not in live and any(dest in live for dest in automaton.matrix[q]):
                live.add(q)
                changed = True
    return live


def _run_frontier(automaton, digits, pos_in, pos_out, b_in, b_out):
    matrix = automaton.matrix
    live = _live_states(automaton)
    pair = [0, 0]
    frontier = {(automaton.initial, 0)}
    for d_in in digits:
        new = set()
        pair[pos_in] = d_in
        for d_out in range(b_out):
            pair[pos_out] = d_out
            sym = automaton.symbol_index(tuple(pair))
            for q, y in frontier:
                dest = matrix[q][sym]
                if dest in live:
                    new.add((dest, y * b_out + d_out))
        frontier = new
    return {y for q, y in frontier if q in automaton.accepting}


def sync_table(automaton, count, input_track=None, output_track=None, extra=2):
    """Outputs for every input below count, by shared-prefix search."""
    pos_in, pos_out = _track_positions(automaton, input_track, output_track)
    b_in = automaton.tracks[pos_in].base
    b_out = automaton.tracks[pos_out].base
    width = len(to_digits(count - 1, b_in)) if count > 1 else 1
    total = width + extra
    accepting = automaton.accepting
    live = _live_states(automaton)
    # move: move[q][d_in] -> list of (successor, d_out), dead ends dropped
    pair = [0, 0]
    move = []
    for q in range(automaton.n_states):
        rows = []
        for d_in in range(b_in):
            pair[pos_in] = d_in
            row = []
            for d_out in range(b_out):
                pair[pos_out] = d_out
                dest = automaton.matrix[q][automaton.symbol_index(tuple(pair))]
                if dest in live:
                    row.append((dest, d_out))
            rows.append(row)
        move.append(rows)

    values = [None] * count

    def descend(pos, prefix, frontier):
        if pos == total:
            found = {y for q, y in frontier if q in accepting}
            if len(found) != 1:
                raise FunctionalityError(
                    f"{sorted(found)} accepted for input {prefix}"
                )
            values[prefix] = found.pop()
            return
        remaining = total - pos - 1
        span = b_in**remaining
        digit_range = range(b_in) if pos >= extra else (0,)
        for d_in in digit_range:
            lo = (prefix * b_in + d_in) * span
            if lo >= count:
                break
            new = set()
            for q, y in frontier:
                for dest, d_out in move[q][d_in]:
                    new.add((dest, y * b_out + d_out))
            if new:
                descend(pos + 1, prefix * b_in + d_in, new)

    if count > 0:
        descend(0, 0, {(automaton.initial, 0)})
    missing = [i for i, v in enumerate(values) if v is None]
    if missing:
        raise FunctionalityError(f"no accepted output for inputs {missing[:5]}")
    return values


# -- inductive verification ---------------------------------------------------

# how the running value moves at step m: the sign automaton's value A(m),
# the alternating weight (-1)^m * A(m), or its negation
STEP_RULES = ("sum", "alt", "neg_alt")


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    witness: dict | None


@dataclass
class VerifyOutcome:
    ok: bool
    checks: list

    def __bool__(self):
        return self.ok

    def failures(self):
        return [c for c in self.checks if not c.passed]


def verify_sync(automaton, sign_dfao, rule, base_value, input_track=None, output_track=None):
    """Prove the candidate computes the running sum of a +/-1 sequence.

    Decides, as sentences: the relation is a total function, its value at 0
    is base_value, and it moves by exactly the signed step at every n -> n+1.
    Together these pin down the function for all n by induction.
    """
    if rule not in STEP_RULES:
        raise ValueError(f"rule must be one of {STEP_RULES}")
    pos_in, pos_out = _track_positions(automaton, input_track, output_track)
    in_sys = automaton.tracks[pos_in].system
    out_sys = automaton.tracks[pos_out].system
    cand = automaton.renamed(
        {automaton.tracks[pos_in].name: "n", automaton.tracks[pos_out].name: "y"}
    )

    env = Environment()
    env.register_relation("cand", cand, ["n", "y"])
    env.register_dfao("SIGN", sign_dfao)
    if rule != "sum":
        env.register_relation(
            "even", compile_formula(env, f"?{in_sys} Ek n=2*k"), ["n"]
        )
        env.register_relation(
            "odd", compile_formula(env, f"?{in_sys} Ek n=2*k+1"), ["n"]
        )

    plus = "SIGN[n+1]=@1"
    minus = "SIGN[n+1]=@-1"
    if rule == "sum":
        up, down = plus, minus
    else:
        weighted = f"(({plus} & $even(n+1)) | ({minus} & $odd(n+1)))"
        opposite = f"(({minus} & $even(n+1)) | ({plus} & $odd(n+1)))"
        up, down = (weighted, opposite) if rule == "alt" else (opposite, weighted)

    checks = [
        ("total", f"?{in_sys} An Ey $cand(n,y)"),
        ("function", f"?{in_sys} An,x,y ($cand(n,x) & $cand(n,y)) => (?{out_sys} x=y)"),
        ("base", f"?{in_sys} $cand(0, {base_value})"),
        ("step_up", f"?{in_sys} An,y ($cand(n,y) & {up}) => $cand(n+1, ?{out_sys} y+1)"),
        ("step_down", f"?{in_sys} An,y ($cand(n,y) & {down}) => $cand(n+1, ?{out_sys} y-1)"),
    ]
    outcomes = []
    for name, formula in checks:
        witness = find_counterexample(env, formula)
        if witness is not None and name == "base":
            witness = {"n": 0}
        outcomes.append(CheckOutcome(name, witness is None, witness))
    return VerifyOutcome(all(c.passed for c in outcomes), outcomes)


def verify_sync_s(candidate):
    """Prove candidate computes the running sum of the base-4 sign table.

    Falsy on failure; the outcome's failures() carry concrete witnesses.
    """
    return verify_sync(candidate, rudin_shapiro_dfao4(), "sum", 1)


def verify_sync_t(candidate):
    """As verify_sync_s with the parity-weighted step (alternating sum)."""
    return verify_sync(candidate, rudin_shapiro_dfao4(), "alt", 1)


def define_derived_sync(env, name, formula):
    """Compile and register a two-track relation, then prove it functional.

    The first track is the argument, the second the value.  A relation
    mapping some argument to two values is dropped again and rejected with
    a witness.  Totality is not required: derived relations may be partial.
    """
    automaton = compile_formula(env, formula)
    if len(automaton.tracks) != 2:
        raise FunctionalityError(
            f"expected 2 free variables, found {[t.name for t in automaton.tracks]}"
        )
    env.register_relation(name, automaton)
    relation = env.relation(name)
    in_sys = relation.automaton.tracks[0].system
    out_sys = relation.automaton.tracks[1].system
    witness = find_counterexample(
        env,
        f"?{in_sys} An,x,y (${name}(n,x) & ${name}(n,y)) => (?{out_sys} x=y)",
    )
    if witness is not None:
        del env.relations[name]
        raise FunctionalityError(f"{name} maps an argument to two values: {witness}")
    return relation


def accepting_bit_mutations(automaton):
    """Every variant of the automaton with one accepting bit flipped."""
    for q in range(automaton.n_states):
        accepting = set(automaton.accepting)
        if q in accepting:
            accepting.discard(q)
        else:
            accepting.add(q)
        yield q, MultiTrackAutomaton(
            automaton.tracks,
            automaton.n_states,
            automaton.initial,
            frozenset(accepting),
            automaton.matrix,
        )
