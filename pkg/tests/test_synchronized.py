"""Guess-and-verify for the running-sum automata."""

import pytest

from rslogic.automata import NumberSystem
from rslogic.errors import FunctionalityError, GuessFailedError
from rslogic.numeration import linear_atom
from rslogic.logic import Environment
from rslogic.sequences import (
    alternating_sum_by_recurrence,
    double_zero_alternating_sum_by_recurrence,
    double_zero_partial_sum_by_recurrence,
    double_zero_sign_dfao4,
    partial_sum_by_recurrence,
    partial_sums,
    pseudo_square,
    rudin_shapiro_dfao4,
)
from rslogic.synchronized import (
    accepting_bit_mutations,
    define_derived_sync,
    guess_sync,
    sync_eval,
    sync_table,
    verify_sync,
    verify_sync_s,
    verify_sync_t,
)

M4 = NumberSystem(4)
M2 = NumberSystem(2)


@pytest.fixture(scope="module")
def rss():
    return guess_sync(partial_sum_by_recurrence, names=("n", "x"))


@pytest.fixture(scope="module")
def rst():
    return guess_sync(alternating_sum_by_recurrence, names=("n", "x"))


def test_guess_shape(rss, rst):
    assert [t.name for t in rss.tracks] == ["n", "x"]
    assert rss.tracks[0].base == 4 and rss.tracks[1].base == 2
    assert rss.is_padding_closed() and rst.is_padding_closed()
    assert rss.n_states < 16 and rst.n_states < 16


def test_guess_deterministic():
    first = guess_sync(partial_sum_by_recurrence, names=("n", "x"))
    second = guess_sync(partial_sum_by_recurrence, names=("n", "x"))
    assert first.to_text() == second.to_text()


def test_guess_state_cap():
    with pytest.raises(GuessFailedError):
        guess_sync(partial_sum_by_recurrence, state_cap=3)


def test_sync_eval_matches_oracle(rss, rst):
    for n in range(2048):
        assert sync_eval(rss, n) == partial_sum_by_recurrence(n)
        assert sync_eval(rst, n) == alternating_sum_by_recurrence(n)
    for n in (10**6, 10**9, 4**20 + 17):
        assert sync_eval(rss, n) == partial_sum_by_recurrence(n)


def test_sync_table_matches_oracle(rss, rst):
    table = sync_table(rss, 1 << 14)
    assert table == [partial_sum_by_recurrence(n) for n in range(1 << 14)]
    table = sync_table(rst, 1 << 14)
    assert table == [alternating_sum_by_recurrence(n) for n in range(1 << 14)]


def test_sync_eval_rejects_relations_that_are_not_functions():
    many = linear_atom({"n": 1, "y": -1}, "<=", 0, M2)  # y >= n
    with pytest.raises(FunctionalityError):
        sync_eval(many, 5, input_track="n")
    none = linear_atom({"n": 1, "y": 1}, "<", 0, M2)  # empty
    with pytest.raises(FunctionalityError):
        sync_eval(none, 5, input_track="n")


def test_verify_plain_sum(rss):
    outcome = verify_sync(rss, rudin_shapiro_dfao4(), "sum", 1)
    assert outcome.ok
    assert [c.name for c in outcome.checks] == [
        "total",
        "function",
        "base",
        "step_up",
        "step_down",
    ]


def test_verify_alternating_sum(rst):
    assert verify_sync(rst, rudin_shapiro_dfao4(), "alt", 1).ok


def test_verify_double_zero_family():
    cand = guess_sync(double_zero_partial_sum_by_recurrence, names=("n", "x"))
    assert verify_sync(cand, double_zero_sign_dfao4(), "sum", 1).ok
    assert cand.n_states < 24

    complement_alt = lambda n: 1 - double_zero_alternating_sum_by_recurrence(n)
    cand = guess_sync(complement_alt, names=("n", "x"))
    assert verify_sync(cand, double_zero_sign_dfao4(), "neg_alt", 0).ok


def test_verify_wrong_rule_fails(rss):
    assert not verify_sync(rss, rudin_shapiro_dfao4(), "alt", 1).ok
    assert not verify_sync(rss, rudin_shapiro_dfao4(), "sum", 0).ok
    with pytest.raises(ValueError):
        verify_sync(rss, rudin_shapiro_dfao4(), "bogus", 1)


def test_every_accepting_mutation_is_caught(rss, rst):
    dfao = rudin_shapiro_dfao4()
    for automaton, rule in ((rss, "sum"), (rst, "alt")):
        for q, mutant in accepting_bit_mutations(automaton):
            outcome = verify_sync(mutant, dfao, rule, 1)
            assert not outcome.ok, f"state {q} mutation went unnoticed"
            failures = outcome.failures()
            assert failures
            assert all(f.witness is not None for f in failures)


def test_mutation_witnesses_are_concrete(rss):
    dfao = rudin_shapiro_dfao4()
    _, mutant = next(iter(accepting_bit_mutations(rss)))
    outcome = verify_sync(mutant, dfao, "sum", 1)
    witness = outcome.failures()[0].witness
    assert isinstance(witness, dict) and "n" in witness

def test_sync_eval_spot_values(rss, rst):
    assert sync_eval(rss, 12) == 5
    assert sync_eval(rst, 11) == 2
    assert sync_eval(rss, 0) == 1


def test_named_verifiers(rss, rst):
    assert verify_sync_s(rss)
    assert verify_sync_t(rst)
    assert not verify_sync_t(rss)
    _, mutant = next(iter(accepting_bit_mutations(rss)))
    outcome = verify_sync_s(mutant)
    assert not outcome
    assert outcome.failures()[0].witness is not None


def test_guess_rejects_identity():
    # closes into a small machine on the sample, but the sample sweep
    # catches the disagreement with the oracle
    with pytest.raises(GuessFailedError):
        guess_sync(lambda n: n)


def test_underfit_sample_fails_verification():
    candidate = guess_sync(partial_sum_by_recurrence, 16)
    assert not verify_sync_s(candidate)


def _sum_environment(rss, rst):
    env = Environment()
    env.register_dfao("RS4", rudin_shapiro_dfao4())
    env.register_relation("rss", rss, ["n", "x"])
    env.register_relation("rst", rst, ["n", "x"])
    return env


LAST_TIME = '?msd_4 $rss(n,k) & At (t>n) => ~$rss(t,k)'
FIRST_TIME_ALT = '?msd_4 $rst(n,k) & At (t<n) => ~$rst(t,k)'


def test_derived_sync_last_occurrence(rss, rst):
    env = _sum_environment(rss, rst)
    relation = define_derived_sync(env, "last_time", LAST_TIME)
    assert [t.name for t in relation.automaton.tracks] == ["p00", "p01"]
    machine = relation.automaton
    assert sync_eval(machine, 1, input_track="p00") == 0
    assert sync_eval(machine, 2, input_track="p00") == 3
    assert sync_eval(machine, 3, input_track="p00") == 6
    # the value 0 is never reached, so the relation is partial there
    with pytest.raises(FunctionalityError):
        sync_eval(machine, 0, input_track="p00")


def test_derived_sync_rejects_non_function(rss, rst):
    env = _sum_environment(rss, rst)
    with pytest.raises(FunctionalityError):
        define_derived_sync(env, "anytime", "?msd_4 $rss(n,k)")
    assert "anytime" not in env.relations
    with pytest.raises(FunctionalityError):
        define_derived_sync(env, "broad", "?msd_4 Ek $rss(n,k) & $rss(m,k)")


def test_last_occurrence_recurrences(rss, rst):
    env = _sum_environment(rss, rst)
    machine = define_derived_sync(env, "last_time", LAST_TIME).automaton
    omega = lambda k: sync_eval(machine, k, input_track="p00")
    for n in range(1, 2**10):
        assert omega(2 * n) == 4 * omega(n) + 3
    for n in range(2, 2**10):
        if (n + 1) & n:  # n+1 is not a power of two
            assert omega(2 * n + 1) == 4 * omega(n + 1) + 2


def test_last_occurrence_bound_and_tightness(rss, rst):
    env = _sum_environment(rss, rst)
    machine = define_derived_sync(env, "last_time", LAST_TIME).automaton
    sums = partial_sums(2**16)
    cache = {}
    equality = []
    for n in range(2, 2**16):
        k = sums[n]
        if k not in cache:
            cache[k] = sync_eval(machine, k, input_track="p00")
        assert 3 * cache[k] <= 10 * n - 2
        if 3 * cache[k] == 10 * n - 2:
            equality.append(n)
    assert equality == [2**i for i in range(1, 16, 2)]


def test_first_alternating_is_pseudo_square_less_one(rss, rst):
    env = _sum_environment(rss, rst)
    machine = define_derived_sync(env, "first_alt", FIRST_TIME_ALT).automaton
    for k in range(1, 2**10):
        assert sync_eval(machine, k, input_track="p00") == pseudo_square(k) - 1


def test_derived_sync_first_occurrence(rss, rst):
    env = _sum_environment(rss, rst)
    machine = define_derived_sync(
        env, "first_time", "?msd_4 $rss(n,k) & At (t<n) => ~$rss(t,k)"
    ).automaton
    assert sync_eval(machine, 4, input_track="p00") == 5
