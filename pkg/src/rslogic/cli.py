"""Command line front end.

suite / bounds / curve / seq drive the whole-corpus toolkit; run / eval /
def execute query-language commands against the standard environment, with
optional persistence of definitions to a directory (one automaton text
file per name); guess synthesizes a summation machine from an oracle and
reports the inductive verification verdict.
"""

from __future__ import annotations

import argparse
import fnmatch
import json
import sys
from pathlib import Path

from .automata import MultiTrackAutomaton, OutputAutomaton
from .errors import EngineError
from .sequences import (
    alternating_sum_by_recurrence,
    alternating_sums,
    double_zero_alternating_sum_by_recurrence,
    double_zero_alternating_sums,
    double_zero_partial_sum_by_recurrence,
    double_zero_partial_sums,
    double_zero_sign,
    double_zero_sign_dfao4,
    partial_sum_by_recurrence,
    partial_sums,
    rudin_shapiro,
    rudin_shapiro_dfao4,
)
from .synchronized import guess_sync, verify_sync
from .toolkit import (
    check_curve,
    curve_points,
    emit_csv,
    emit_svg,
    run_suite,
    standard_environment,
    verify_bounds,
)

GUESSABLE = {
    "s": (partial_sum_by_recurrence, rudin_shapiro_dfao4, "sum", 1),
    "t": (alternating_sum_by_recurrence, rudin_shapiro_dfao4, "alt", 1),
    "sp": (double_zero_partial_sum_by_recurrence, double_zero_sign_dfao4, "sum", 1),
    "nt": (
        lambda n: 1 - double_zero_alternating_sum_by_recurrence(n),
        double_zero_sign_dfao4,
        "neg_alt",
        0,
    ),
}


def _load_env(args):
    env = standard_environment()
    env_dir = getattr(args, "env_dir", None)
    if env_dir:
        directory = Path(env_dir)
        for path in sorted(directory.glob("*.rel.txt")):
            name = path.name[: -len(".rel.txt")]
            automaton = MultiTrackAutomaton.from_text(path.read_text())
            env.register_relation(name, automaton, overwrite=True)
        for path in sorted(directory.glob("*.dfao.txt")):
            name = path.name[: -len(".dfao.txt")]
            env.register_dfao(name, OutputAutomaton.from_text(path.read_text()), overwrite=True)
    return env


def _save_env(env, args):
    env_dir = getattr(args, "env_dir", None)
    if not env_dir:
        return
    directory = Path(env_dir)
    directory.mkdir(parents=True, exist_ok=True)
    for name, relation in env.relations.items():
        (directory / f"{name}.rel.txt").write_text(relation.automaton.to_text())
    for name, dfao in env.dfaos.items():
        (directory / f"{name}.dfao.txt").write_text(dfao.to_text())


def _describe(result):
    if result.error is not None:
        return f"error: {result.error}"
    if result.truth is not None:
        return "TRUE" if result.truth else "FALSE"
    if result.automaton is not None:
        return f"automaton with {result.automaton.n_states} states"
    if result.representation is not None:
        return f"linear representation of rank {result.representation.rank}"
    return "ok"


def cmd_suite(args):
    report = run_suite()
    rows = [r for r in report.rows if fnmatch.fnmatch(r.name, args.filter)]
    if not rows:
        print(f"no checks match {args.filter!r}", file=sys.stderr)
        return 2
    if args.report == "json":
        payload = {
            "ok": all(r.ok for r in rows),
            "rows": [
                {
                    "id": r.name,
                    "kind": r.kind,
                    "expected": r.expected,
                    "actual": r.actual,
                    "ok": r.ok,
                    "seconds": round(r.seconds, 6),
                }
                for r in rows
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        width = max(len(r.name) for r in rows)
        for r in rows:
            status = "pass" if r.ok else "FAIL"
            print(
                f"{r.name:<{width}}  {status}  {1000 * r.seconds:8.1f} ms"
                f"  expected {r.expected}, got {r.actual}"
            )
        passed = sum(r.ok for r in rows)
        print(f"{passed}/{len(rows)} checks passed")
    return 0 if all(r.ok for r in rows) else 1


def cmd_bounds(args):
    report = verify_bounds(args.to)
    print(report.table())
    return 0 if report.ok else 1


def cmd_curve(args):
    ok = check_curve(args.points)
    points = curve_points(args.points)
    last = points[-1]
    print(f"{args.points} points, ends at ({last.x}, {last.y})")
    print(f"segment and revisit checks: {'pass' if ok else 'FAIL'}")
    if args.svg:
        emit_svg(args.points, args.svg)
        print(f"wrote {args.svg}")
    if args.csv:
        emit_csv(args.points, args.csv)
        print(f"wrote {args.csv}")
    return 0 if ok else 1


def cmd_seq(args):
    s = partial_sums(args.to)
    t = alternating_sums(args.to)
    sp = double_zero_partial_sums(args.to)
    tp = double_zero_alternating_sums(args.to)
    print("n,a,s,t,ap,sp,tp")
    for n in range(args.to):
        print(
            f"{n},{rudin_shapiro(n)},{s[n]},{t[n]},"
            f"{double_zero_sign(n)},{sp[n]},{tp[n]}"
        )
    return 0


def cmd_run(args):
    env = _load_env(args)
    text = Path(args.script).read_text()
    results = env.run_script(text, continue_on_error=args.continue_on_error)
    failed = False
    for result in results:
        print(f"{result.name}: {_describe(result)}  ({1000 * result.seconds:.1f} ms)")
        failed = failed or result.error is not None
    _save_env(env, args)
    return 1 if failed else 0


def cmd_eval(args):
    env = _load_env(args)
    (result,) = env.run_script(f'eval it "{args.query}":')
    print(_describe(result))
    _save_env(env, args)
    return 0


def cmd_def(args):
    env = _load_env(args)
    (result,) = env.run_script(f'def {args.name} "{args.formula}":')
    print(f"{args.name}: {_describe(result)}")
    _save_env(env, args)
    return 0


def cmd_guess(args):
    oracle, dfao, rule, base = GUESSABLE[args.sequence]
    candidate = guess_sync(
        oracle, args.sample_bound, args.state_cap, names=("n", "x")
    )
    print(f"candidate has {candidate.n_states} states")
    outcome = verify_sync(candidate, dfao(), rule, base)
    for check in outcome.checks:
        status = "proved" if check.passed else f"FAILS at {check.witness}"
        print(f"  {check.name}: {status}")
    if args.out:
        Path(args.out).write_text(candidate.to_text())
        print(f"wrote {args.out}")
    return 0 if outcome.ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rslogic",
        description="Decide statements about digit-pair counting sums and emit their curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("suite", help="run the whole check suite")
    p.add_argument("--filter", default="*", help="glob over check ids")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_suite)

    p = sub.add_parser("bounds", help="integer sweeps of the inequality families")
    p.add_argument("--to", type=int, default=2**16)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("curve", help="check and emit the plane walk")
    p.add_argument("--points", type=int, default=1024)
    p.add_argument("--svg")
    p.add_argument("--csv")
    p.set_defaults(handler=cmd_curve)

    p = sub.add_parser("seq", help="print the sequences as CSV")
    p.add_argument("--to", type=int, default=64)
    p.set_defaults(handler=cmd_seq)

    p = sub.add_parser("run", help="run a query script file")
    p.add_argument("script")
    p.add_argument("--continue-on-error", action="store_true")
    p.add_argument("--env-dir")
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("eval", help="decide one query")
    p.add_argument("query")
    p.add_argument("--env-dir")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("def", help="define one named relation")
    p.add_argument("name")
    p.add_argument("formula")
    p.add_argument("--env-dir")
    p.set_defaults(handler=cmd_def)

    p = sub.add_parser("guess", help="synthesize a summation machine and verify it")
    p.add_argument("sequence", choices=sorted(GUESSABLE))
    p.add_argument("--sample-bound", type=int, default=2**14)
    p.add_argument("--state-cap", type=int, default=64)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_guess)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
