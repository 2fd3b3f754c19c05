"""Integer-level reference implementations of the sequences under study.

Everything here works directly on Python integers and serves as the oracle
side of the test suite; the automata built elsewhere are checked against
these functions, never the other way around.
"""

from __future__ import annotations

from functools import lru_cache

from .automata import NumberSystem, OutputAutomaton, Track

__all__ = [
    "pair_count",
    "rudin_shapiro",
    "partial_sum",
    "alternating_sum",
    "partial_sums",
    "alternating_sums",
    "partial_sum_by_recurrence",
    "alternating_sum_by_recurrence",
    "pseudo_square",
    "double_zero_sign",
    "double_zero_partial_sum",
    "double_zero_alternating_sum",
    "double_zero_partial_sums",
    "double_zero_alternating_sums",
    "rudin_shapiro_dfao2",
    "rudin_shapiro_dfao4",
    "double_zero_sign_dfao4",
]


def pair_count(n: int) -> int:
    """Number of (possibly overlapping) adjacent 1-pairs in binary n."""
    return bin(n & (n >> 1)).count("1")


def rudin_shapiro(n: int) -> int:
    """+1 or -1 according to the parity of adjacent 1-pairs in binary n."""
    return -1 if pair_count(n) & 1 else 1


def partial_sum(n: int) -> int:
    """Sum of rudin_shapiro(0..n)."""
    return sum(rudin_shapiro(i) for i in range(n + 1))


def alternating_sum(n: int) -> int:
    """Alternating sum of rudin_shapiro(0..n), even indices positive."""
    total = 0
    for i in range(n + 1):
        v = rudin_shapiro(i)
        total += v if i % 2 == 0 else -v
    return total


def partial_sums(limit: int) -> list[int]:
    """partial_sum(n) for all n < limit, as one running sweep."""
    out = []
    acc = 0
    for i in range(limit):
        acc += rudin_shapiro(i)
        out.append(acc)
    return out


def alternating_sums(limit: int) -> list[int]:
    out = []
    acc = 0
    for i in range(limit):
        v = rudin_shapiro(i)
        acc += v if i % 2 == 0 else -v
        out.append(acc)
    return out


@lru_cache(maxsize=None)
def partial_sum_by_recurrence(n: int) -> int:
    """Independent route to partial_sum via halving recurrences."""
    if n == 0:
        return 1
    half, r = divmod(n, 2)
    if r == 0:
        return partial_sum_by_recurrence(half) + alternating_sum_by_recurrence(half - 1)
    return partial_sum_by_recurrence(half) + alternating_sum_by_recurrence(half)


@lru_cache(maxsize=None)
def alternating_sum_by_recurrence(n: int) -> int:
    if n == 0:
        return 1
    half, r = divmod(n, 2)
    if r == 0:
        return partial_sum_by_recurrence(half) - alternating_sum_by_recurrence(half - 1)
    return partial_sum_by_recurrence(half) - alternating_sum_by_recurrence(half)


def pseudo_square(n: int) -> int:
    """Binary digits of n reinterpreted as base-4 digits."""
    return int(bin(n)[2:], 4)


def double_zero_sign(n: int) -> int:
    """+1 or -1 by parity of adjacent 0-pairs in binary n, no leading zeros."""
    if n == 0:
        return 1
    bits = bin(n)[2:]
    pairs = sum(1 for i in range(len(bits) - 1) if bits[i] == bits[i + 1] == "0")
    return -1 if pairs & 1 else 1


def double_zero_partial_sum(n: int) -> int:
    return sum(double_zero_sign(i) for i in range(n + 1))


def double_zero_alternating_sum(n: int) -> int:
    total = 0
    for i in range(n + 1):
        v = double_zero_sign(i)
        total += v if i % 2 == 0 else -v
    return total


@lru_cache(maxsize=None)
def double_zero_partial_sum_by_recurrence(n: int) -> int:
    """Independent route to double_zero_partial_sum via halving recurrences."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    half, r = divmod(n, 2)
    if r == 0:
        return (
            double_zero_partial_sum_by_recurrence(half - 1)
            - double_zero_alternating_sum_by_recurrence(half)
            + 2
        )
    return (
        double_zero_partial_sum_by_recurrence(half)
        - double_zero_alternating_sum_by_recurrence(half)
        + 2
    )


@lru_cache(maxsize=None)
def double_zero_alternating_sum_by_recurrence(n: int) -> int:
    if n == 0:
        return 1
    half, r = divmod(n, 2)
    if r == 0:
        return (
            -double_zero_alternating_sum_by_recurrence(half)
            - double_zero_partial_sum_by_recurrence(half - 1)
            + 2
        )
    return (
        -double_zero_alternating_sum_by_recurrence(half)
        - double_zero_partial_sum_by_recurrence(half)
        + 2
    )


def double_zero_partial_sums(limit: int) -> list[int]:
    out = []
    acc = 0
    for i in range(limit):
        acc += double_zero_sign(i)
        out.append(acc)
    return out


def double_zero_alternating_sums(limit: int) -> list[int]:
    out = []
    acc = 0
    for i in range(limit):
        v = double_zero_sign(i)
        acc += v if i % 2 == 0 else -v
        out.append(acc)
    return out


def rudin_shapiro_dfao2() -> OutputAutomaton:
    """Base-2 output automaton computing rudin_shapiro(n).

    States are (parity of 1-pairs so far, previous bit); leading zeros are
    harmless because a zero bit never extends a 1-pair.
    """
    track = Track("n", NumberSystem(2))
    # state = 2 * parity + last_bit
    matrix = []
    outputs = []
    for q in range(4):
        parity, last = divmod(q, 2)
        row = []
        for bit in (0, 1):
            p2 = parity ^ (last & bit)
            row.append(2 * p2 + bit)
        matrix.append(row)
        outputs.append(-1 if parity else 1)
    return OutputAutomaton(track, 4, 0, outputs, matrix)


def rudin_shapiro_dfao4() -> OutputAutomaton:
    """Base-4 output automaton computing rudin_shapiro(n).

    A base-4 digit is two binary digits, so each step feeds the pair
    counter twice.  Padding the base-4 string pads the binary string with
    an even number of zeros, which never changes the count.
    """
    track = Track("n", NumberSystem(4))
    matrix = []
    outputs = []
    for q in range(4):
        parity, last = divmod(q, 2)
        row = []
        for digit in range(4):
            hi, lo = divmod(digit, 2)
            p = parity ^ (last & hi) ^ (hi & lo)
            row.append(2 * p + lo)
        matrix.append(row)
        outputs.append(-1 if parity else 1)
    return OutputAutomaton(track, 4, 0, outputs, matrix)


def double_zero_sign_dfao4() -> OutputAutomaton:
    """Base-4 output automaton computing double_zero_sign(n).

    Zero pairs are counted on the canonical binary string, so the machine
    idles in a start state until the first 1-bit arrives; that also makes
    it insensitive to leading padding.  State 0 is the idle state, the
    others encode (parity of 0-pairs, previous bit).
    """
    track = Track("n", NumberSystem(4))
    matrix = [[]]
    outputs = [1]
    # states 1..4: 1 + 2*parity + last_bit
    for digit in range(4):
        hi, lo = divmod(digit, 2)
        if hi == 0 and lo == 0:
            matrix[0].append(0)
        else:
            # first 1-bit arrives inside this digit; a (1, lo) pair never
            # contributes a 0-pair, so parity starts at 0
            matrix[0].append(1 + lo)
    for q in range(1, 5):
        parity, last = divmod(q - 1, 2)
        row = []
        for digit in range(4):
            hi, lo = divmod(digit, 2)
            p = parity ^ (1 if last == 0 and hi == 0 else 0) ^ (1 if hi == 0 and lo == 0 else 0)
            row.append(1 + 2 * p + lo)
        matrix.append(row)
        outputs.append(-1 if parity else 1)
    return OutputAutomaton(track, 5, 0, outputs, matrix)
