import itertools
import random

import pytest

from rslogic.automata import (
    MultiTrackAutomaton,
    NumberSystem,
    OutputAutomaton,
    Track,
    OP_AND,
    OP_OR,
    OP_XOR,
    complement,
    decode_word,
    determinize,
    encode_values,
    find_witness,
    from_digits,
    from_regex,
    is_empty,
    language_equal,
    minimize,
    product,
    project,
    to_digits,
)
from rslogic.errors import AutomatonError, BaseMismatchError, RegexError


def t2(name):
    return Track(name, NumberSystem(2))


def equality_automaton():
    # x == y over two binary tracks: state 0 all digits agree, state 1 sink
    tracks = (t2("x"), t2("y"))
    matrix = [
        [0, 1, 1, 0],  # (0,0) (0,1) (1,0) (1,1)
        [1, 1, 1, 1],
    ]
    return MultiTrackAutomaton(tracks, 2, 0, {0}, matrix)


def less_than_automaton():
    # x < y, msd first: 0 undecided, 1 x<y, 2 x>y
    tracks = (t2("x"), t2("y"))
    matrix = [
        [0, 1, 2, 0],
        [1, 1, 1, 1],
        [2, 2, 2, 2],
    ]
    return MultiTrackAutomaton(tracks, 3, 0, {1}, matrix)


def languages_agree(a, box):
    """Compare value semantics over a rectangular box of value tuples."""
    aut, oracle = a
    for values in itertools.product(*(range(hi) for hi in box)):
        assert aut.accepts_values(list(values)) == oracle(*values), values


def test_digit_roundtrip():
    for base in (2, 3, 4, 10):
        for n in range(300):
            ds = to_digits(n, base)
            assert from_digits(ds, base) == n
            assert not ds or ds[0] != 0
    assert to_digits(0, 2) == []


def test_encode_decode_roundtrip():
    tracks = (t2("x"), Track("y", NumberSystem(4)))
    rng = random.Random(7)
    for _ in range(200):
        vals = (rng.randrange(1000), rng.randrange(1000))
        word = encode_values(tracks, vals)
        assert decode_word(tracks, word) == vals
        padded = encode_values(tracks, vals, length=len(word) + 3)
        assert decode_word(tracks, padded) == vals


def test_encode_rejects_short_length():
    with pytest.raises(ValueError):
        encode_values((t2("x"),), (9,), length=2)


def test_equality_automaton_semantics():
    languages_agree((equality_automaton(), lambda x, y: x == y), (40, 40))


def test_less_than_semantics():
    languages_agree((less_than_automaton(), lambda x, y: x < y), (40, 40))


def test_padding_invariance():
    for aut in (equality_automaton(), less_than_automaton()):
        assert aut.is_padding_closed()
        for x in range(20):
            for y in range(20):
                base = aut.accepts_values((x, y))
                assert aut.accepts_values((x, y), extra_padding=2) == base


def test_product_boolean_ops():
    eq = equality_automaton()
    lt = less_than_automaton()
    le = product(eq, lt, OP_OR)
    languages_agree((le, lambda x, y: x <= y), (30, 30))
    both = product(eq, lt, OP_AND)
    assert is_empty(minimize(both))
    neither = product(eq, lt, OP_XOR)
    languages_agree((neither, lambda x, y: x == y or x < y), (25, 25))


def test_product_matches_tracks_by_name():
    eq = equality_automaton()
    lt_yz = less_than_automaton().renamed({"x": "y", "y": "z"})
    chain = product(eq, lt_yz, OP_AND)
    assert tuple(t.name for t in chain.tracks) == ("x", "y", "z")
    languages_agree((chain, lambda x, y, z: x == y and y < z), (12, 12, 12))


def test_product_base_mismatch_rejected():
    eq = equality_automaton()
    other = MultiTrackAutomaton(
        (Track("x", NumberSystem(4)),), 1, 0, {0}, [[0, 0, 0, 0]]
    )
    with pytest.raises(BaseMismatchError):
        product(eq, other, OP_AND)


def test_complement_semantics():
    ne = complement(equality_automaton())
    languages_agree((ne, lambda x, y: x != y), (30, 30))


def test_renamed_diagonal_merge():
    # identifying both tracks of x<y yields the empty language
    merged = less_than_automaton().renamed({"y": "x"})
    assert len(merged.tracks) == 1
    assert is_empty(minimize(merged))
    refl = equality_automaton().renamed({"y": "x"})
    languages_agree((refl, lambda x: True), (50,))


def test_projection_exists_greater():
    # E y: x < y holds for every x; witnesses may need an extra digit
    lt = less_than_automaton()
    some_bigger = project(lt, "y")
    assert [t.name for t in some_bigger.tracks] == ["x"]
    languages_agree((some_bigger, lambda x: True), (70,))
    assert some_bigger.is_padding_closed()


def test_projection_exists_smaller():
    # E x: x < y holds exactly for y >= 1
    lt = less_than_automaton()
    nonzero = project(lt, "x")
    assert [t.name for t in nonzero.tracks] == ["y"]
    languages_agree((nonzero, lambda y: y >= 1), (70,))
    assert nonzero.is_padding_closed()


def test_projection_to_zero_tracks():
    eq = equality_automaton()
    stage = project(eq, "x")
    closed = project(stage, "y")
    assert closed.tracks == ()
    # sentence "exists x exists y: x == y" is true
    assert closed.accepts_values(())
    none = project(project(product(equality_automaton(), less_than_automaton(), OP_AND), "x"), "y")
    assert not none.accepts_values(())


def test_minimize_is_canonical():
    a = from_regex(["msd_2"], "0*10*")
    b = minimize(complement(complement(a)))
    c = minimize(product(a, a, OP_AND))
    assert a.to_text() == b.to_text()
    assert a.to_text() == c.to_text()
    assert minimize(a).to_text() == a.to_text()


def test_minimize_drops_unreachable_and_merges():
    tracks = (t2("x"),)
    # states 2 and 3 unreachable; 0 and 1 distinguishable
    matrix = [[0, 1], [1, 0], [3, 3], [2, 2]]
    a = MultiTrackAutomaton(tracks, 4, 0, {1}, matrix)
    m = minimize(a)
    assert m.n_states == 2
    languages_agree((m, lambda x: bin(x).count("1") % 2 == 1), (64,))


def test_language_equal_and_witness():
    eq = equality_automaton()
    le = product(eq, less_than_automaton(), OP_OR)
    assert not language_equal(eq, le)
    diff = product(le, complement(eq), OP_AND)
    w = find_witness(minimize(diff))
    x, y = decode_word(eq.tracks, w)
    assert x < y
    assert language_equal(le, product(less_than_automaton(), eq, OP_OR))


def test_find_witness_empty_language():
    eq = equality_automaton()
    none = product(eq, complement(eq), OP_AND)
    assert find_witness(minimize(none)) is None
    # trivially true automaton has the empty witness
    assert find_witness(minimize(complement(none))) == []


def test_regex_powers_of_two():
    p2 = from_regex(["msd_2"], "0*10*")
    languages_agree((p2, lambda n: n > 0 and n & (n - 1) == 0), (600,))
    assert p2.is_padding_closed()


def test_regex_double_powers_of_four():
    odd = from_regex(["msd_4"], "0*20*")
    oracle = lambda n: n > 0 and any(n == 2 * 4 ** k for k in range(10))
    languages_agree((odd, oracle), (700,))


def test_regex_base4_base2_digit_link():
    link = from_regex(["msd_4", "msd_2"], "([0,0]|[1,1])*", names=["x", "y"])

    def oracle(x, y):
        dx = to_digits(x, 4)
        dy = to_digits(y, 2)
        if len(dx) != len(dy):
            return x == y == 0
        return all(a == b and a <= 1 for a, b in zip(dx, dy))

    languages_agree((link, oracle), (90, 90))
    assert link.is_padding_closed()


def test_regex_union_and_literal_values():
    pat = from_regex(["msd_2", "msd_2"], "[0,0]*[1,1][0,0]* | [0,1][1,0]", names=["x", "y"])
    expected = {(2 ** k, 2 ** k) for k in range(9)} | {(1, 2)}
    for x in range(70):
        for y in range(70):
            assert pat.accepts_values((x, y)) == ((x, y) in expected)


def test_regex_epsilon_only():
    zero = from_regex(["msd_2"], "()")
    languages_agree((zero, lambda n: n == 0), (50,))
    assert zero.accepts([])
    assert zero.accepts([(0,), (0,)])


def test_regex_rejects_garbage():
    with pytest.raises(RegexError):
        from_regex(["msd_2"], "0*(1")
    with pytest.raises(RegexError):
        from_regex(["msd_2", "msd_2"], "01")
    with pytest.raises(RegexError):
        from_regex(["msd_2"], "[1,1]")
    with pytest.raises(RegexError):
        from_regex(["msd_2"], "0*30*")


def test_serialization_roundtrip():
    for aut in (equality_automaton(), less_than_automaton(), from_regex(["msd_4"], "0*20*")):
        m = minimize(aut)
        back = MultiTrackAutomaton.from_text(m.to_text(), names=[t.name for t in m.tracks])
        assert language_equal(m, back)
        assert back.to_text() == m.to_text()


def test_determinize_subset_construction():
    nfa = from_regex(["msd_2"], "(0|1)*1(0|1)")  # second to last digit is 1
    values = {n for n in range(256) if len(to_digits(n, 2)) >= 2 and to_digits(n, 2)[-2] == 1}
    # padding closure keeps value semantics
    for n in range(256):
        assert nfa.accepts_values([n]) == (n in values)


def test_walk_rejects_bad_digits():
    eq = equality_automaton()
    with pytest.raises(AutomatonError):
        eq.step(0, (2, 0))


def test_duplicate_track_names_rejected():
    with pytest.raises(AutomatonError):
        MultiTrackAutomaton((t2("x"), t2("x")), 1, 0, {0}, [[0, 0, 0, 0]])


def test_output_automaton_thue_morse():
    # bit-count parity in base 2
    track = Track("n", NumberSystem(2))
    dfao = OutputAutomaton(track, 2, 0, [1, -1], [[0, 1], [1, 0]])
    for n in range(500):
        expected = -1 if bin(n).count("1") % 2 else 1
        assert dfao.value(n) == expected
    plus = dfao.where(1)
    languages_agree((plus, lambda n: bin(n).count("1") % 2 == 0), (300,))


def test_output_automaton_minimize_and_roundtrip():
    track = Track("n", NumberSystem(2))
    # redundant copy of the parity machine: states 2,3 mirror 0,1
    dfao = OutputAutomaton(track, 4, 0, [1, -1, 1, -1], [[2, 3], [3, 2], [0, 1], [1, 0]])
    small = dfao.minimized()
    assert small.n_states == 2
    for n in range(200):
        assert small.value(n) == dfao.value(n)
    back = OutputAutomaton.from_text(small.to_text())
    for n in range(200):
        assert back.value(n) == small.value(n)
