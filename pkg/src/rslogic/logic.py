"""Compile parsed formulas into automata and run whole scripts.

Every compiled subformula is a complete, minimal, padding-closed automaton
whose tracks are exactly its free variables.  Connectives become synchronous
products, existential quantifiers become track projections, and universal
quantifiers are rewritten through double complement.  Registered relations
are stored with positional parameter tracks so applications simply rename
tracks onto the caller's variables.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .automata import (
    MultiTrackAutomaton,
    NumberSystem,
    OP_AND,
    OP_IFF,
    OP_IMPLIES,
    OP_OR,
    complement,
    decode_word,
    find_witness,
    from_regex,
    minimize,
    product,
    project,
)
from .errors import BaseMismatchError, CompileError, EngineError
from .numeration import linear_atom
from .parser import (
    Apply,
    BinOp,
    Command,
    Compare,
    DEFAULT_SYSTEM,
    Not,
    OutputTest,
    Quantified,
    parse_formula,
    parse_script,
)

__all__ = [
    "Relation",
    "Environment",
    "CommandResult",
    "compile_formula",
    "decide",
    "find_counterexample",
]


def _param(i: int) -> str:
    return f"p{i:02d}"


@dataclass
class Relation:
    """A registered relation: automaton over positional parameter tracks."""

    name: str
    automaton: MultiTrackAutomaton
    systems: list

    @property
    def arity(self):
        return len(self.systems)


class Environment:
    """Named relations, automata with output, and linear representations."""

    def __init__(self):
        self.relations = {}
        self.dfaos = {}
        self.representations = {}

    def register_relation(self, name, automaton, order=None, overwrite=False):
        """Register; ``order`` lists the automaton's tracks in parameter order
        (default: sorted track names, the order compiled formulas use)."""
        if name in self.relations and not overwrite:
            raise CompileError(f"relation {name!r} is already defined")
        if order is None:
            order = [t.name for t in automaton.tracks]
        by_name = {t.name: t for t in automaton.tracks}
        if sorted(order) != sorted(by_name):
            raise CompileError(f"parameter order {order} does not match tracks of {name}")
        stored = automaton.renamed({v: _param(i) for i, v in enumerate(order)})
        systems = [by_name[v].system for v in order]
        self.relations[name] = Relation(name, stored, systems)
        return self.relations[name]

    def register_dfao(self, name, dfao, overwrite=False):
        if name in self.dfaos and not overwrite:
            raise CompileError(f"automaton with output {name!r} is already defined")
        self.dfaos[name] = dfao

    def relation(self, name) -> Relation:
        try:
            return self.relations[name]
        except KeyError:
            raise CompileError(f"unknown relation {name!r}") from None

    def dfao(self, name):
        try:
            return self.dfaos[name]
        except KeyError:
            raise CompileError(f"unknown automaton with output {name!r}") from None

    # -- running scripts ---------------------------------------------------

    def run_script(self, text, continue_on_error=False):
        """Execute commands in order; returns one CommandResult per command.

        Aborts on the first failing command unless continue_on_error is
        set, in which case the failure is recorded on the result row.
        """
        results = []
        for command in parse_script(text):
            try:
                results.append(self.run_command(command))
            except EngineError as exc:
                if not continue_on_error:
                    raise
                results.append(CommandResult(command, None, None, None, 0.0, exc))
        return results

    def run_command(self, command: Command) -> "CommandResult":
        start = time.perf_counter()
        truth = None
        automaton = None
        representation = None
        if command.kind == "reg":
            systems = [NumberSystem.parse(p) for p in command.params]
            automaton = from_regex(systems, command.body)
            self.register_relation(command.name, automaton)
        elif command.kind in ("def", "eval"):
            if command.params:
                from .linrep import count_representation

                node = parse_formula(command.body)
                full = compile_formula(self, node)
                representation = count_representation(full, command.params)
                self.representations[command.name] = representation
            else:
                node = parse_formula(command.body)
                automaton = compile_formula(self, node)
                if automaton.tracks:
                    self.register_relation(command.name, automaton)
                else:
                    truth = automaton.accepts([])
        else:
            raise CompileError(f"unknown command kind {command.kind!r}")
        seconds = time.perf_counter() - start
        return CommandResult(command, truth, automaton, representation, seconds)


@dataclass
class CommandResult:
    command: Command
    truth: bool | None
    automaton: MultiTrackAutomaton | None
    representation: object | None
    seconds: float
    error: Exception | None = None

    @property
    def name(self):
        return self.command.name


_BINOPS = {"&": OP_AND, "|": OP_OR, "=>": OP_IMPLIES, "<=>": OP_IFF}


class _Compiler:
    def __init__(self, env: Environment):
        self.env = env
        self.fresh = 0

    def _fresh_name(self):
        name = f"__a{self.fresh}"
        self.fresh += 1
        return name

    def compile(self, node) -> MultiTrackAutomaton:
        if isinstance(node, Compare):
            coeffs = dict(node.left.coeffs)
            for v, c in node.right.coeffs.items():
                coeffs[v] = coeffs.get(v, 0) - c
            constant = node.right.const - node.left.const
            return linear_atom(coeffs, node.rel, constant, node.system)
        if isinstance(node, Apply):
            rel = self.env.relation(node.name)
            if len(node.args) != rel.arity:
                raise CompileError(
                    f"{node.name} takes {rel.arity} arguments, got {len(node.args)}"
                )
            return self._apply(rel.automaton, rel.systems, node.args)
        if isinstance(node, OutputTest):
            dfao = self.env.dfao(node.name)
            recognizer = dfao.where(node.value, name=_param(0))
            return self._apply(recognizer, [dfao.track.system], [node.arg])
        if isinstance(node, Not):
            return complement(self.compile(node.body))
        if isinstance(node, BinOp):
            left = self.compile(node.left)
            right = self.compile(node.right)
            return minimize(product(left, right, _BINOPS[node.op]))
        if isinstance(node, Quantified):
            if node.kind == "E":
                return self._exists(node.variables, _flatten_and(node.body))
            body = node.body
            if isinstance(body, BinOp) and body.op == "=>":
                conjuncts = _flatten_and(body.left) + [Not(body.right)]
            else:
                conjuncts = [Not(body)]
            return complement(self._exists(node.variables, conjuncts))
        raise CompileError(f"cannot compile node {type(node).__name__}")

    def _apply(self, automaton, systems, args):
        mapping = {}
        equations = []
        scratch = []
        for i, (term, system) in enumerate(zip(args, systems)):
            if term.system is not None and term.system != system:
                raise BaseMismatchError(
                    f"argument {i} is annotated {term.system} but the relation reads {system}"
                )
            if term.is_variable():
                mapping[_param(i)] = term.variable()
                continue
            name = self._fresh_name()
            mapping[_param(i)] = name
            scratch.append(name)
            coeffs = {name: 1}
            for v, c in term.coeffs.items():
                coeffs[v] = coeffs.get(v, 0) - c
            equations.append(linear_atom(coeffs, "=", term.const, system))
        out = automaton.renamed(mapping)
        for eq in equations:
            out = minimize(product(out, eq, OP_AND))
        for name in scratch:
            out = minimize(project(out, name))
        return out

    def _exists(self, variables, conjunct_nodes):
        autos = [self.compile(c) for c in conjunct_nodes]
        pending = set(variables)

        def project_single_holders():
            changed = True
            while changed:
                changed = False
                for v in sorted(pending):
                    holders = [k for k, a in enumerate(autos) if _has_track(a, v)]
                    if not holders:
                        pending.discard(v)
                        changed = True
                    elif len(holders) == 1:
                        k = holders[0]
                        autos[k] = minimize(project(autos[k], v))
                        pending.discard(v)
                        changed = True

        project_single_holders()
        while len(autos) > 1:
            best = None
            for i in range(len(autos)):
                for j in range(i + 1, len(autos)):
                    est = (
                        autos[i].n_states
                        * autos[j].n_states
                        * _merged_width(autos[i], autos[j])
                    )
                    if best is None or est < best[0]:
                        best = (est, i, j)
            _, i, j = best
            merged = minimize(product(autos[i], autos[j], OP_AND))
            autos = [a for k, a in enumerate(autos) if k not in (i, j)]
            autos.append(merged)
            project_single_holders()
        out = autos[0]
        for v in sorted(pending):
            if _has_track(out, v):
                out = minimize(project(out, v))
        return out


def _has_track(automaton, name):
    return any(t.name == name for t in automaton.tracks)


def _merged_width(a, b):
    bases = {t.name: t.base for t in a.tracks}
    bases.update({t.name: t.base for t in b.tracks})
    width = 1
    for base in bases.values():
        width *= base
    return width


def _flatten_and(node):
    if isinstance(node, BinOp) and node.op == "&":
        return _flatten_and(node.left) + _flatten_and(node.right)
    return [node]


def compile_formula(env: Environment, source) -> MultiTrackAutomaton:
    """Compile formula text (or a parsed node) against an environment."""
    node = parse_formula(source) if isinstance(source, str) else source
    return _Compiler(env).compile(node)


def decide(env: Environment, source) -> bool:
    """Truth value of a sentence (a formula with no free variables)."""
    automaton = compile_formula(env, source)
    if automaton.tracks:
        names = [t.name for t in automaton.tracks]
        raise CompileError(f"not a sentence, free variables remain: {names}")
    return automaton.accepts([])


def find_counterexample(env: Environment, source):
    """Assignment falsifying a universally quantified formula, or None.

    The leading block of universal quantifiers is stripped and the negated
    body is searched for its shortest accepted valuation.  Variables the
    negation does not constrain are reported as 0.  For a sentence without
    a universal prefix the result is {} when it is false, None when true.
    """
    node = parse_formula(source) if isinstance(source, str) else source
    prefix = []
    while isinstance(node, Quantified) and node.kind == "A":
        prefix.extend(node.variables)
        node = node.body
    if not prefix:
        truth = _Compiler(env).compile(node)
        if truth.tracks:
            raise CompileError("formula has free variables and no universal prefix")
        return None if truth.accepts([]) else {}
    negated = _Compiler(env).compile(Not(node))
    word = find_witness(negated)
    if word is None:
        return None
    values = decode_word(negated.tracks, word)
    assignment = {t.name: v for t, v in zip(negated.tracks, values)}
    for v in prefix:
        assignment.setdefault(v, 0)
    return assignment
