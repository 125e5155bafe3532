"""Limit words, factor sets, and balance certificates."""

from __future__ import annotations

import pytest

from sadic.directive import DirectiveSequence
from sadic.errors import NonStabilizingError, NotSaturatedError
from sadic.language import balance, factors, limit_word_prefix
from sadic.words import Substitution

FIB = DirectiveSequence.periodic([Substitution("12", "1")])


def test_limit_word_prefix_examples():
    assert limit_word_prefix(FIB, "1", 8) == "12112121"
    assert limit_word_prefix(FIB, "1", 0) == ""
    # seed letter 2 funnels into the same tail
    assert limit_word_prefix(FIB, "2", 5) == "12112"


def test_limit_word_prefix_coherence():
    long = limit_word_prefix(FIB, "1", 500)
    for n in (1, 7, 99, 500):
        assert limit_word_prefix(FIB, "1", n) == long[:n]


def test_limit_word_prefix_non_stabilizing():
    # 1 -> 2 -> 1 -> ... flips forever and never settles a first letter.
    swap = DirectiveSequence.periodic([Substitution("2", "1")])
    with pytest.raises(NonStabilizingError):
        limit_word_prefix(swap, "1", 4, max_depth=64)


def test_factors_fibonacci_small():
    fs = factors(FIB, 0, 2)
    assert fs.saturated
    assert fs.words() == {"1", "2", "11", "12", "21"}
    assert factors(FIB, 0, 1).words() == {"1", "2"}
    # constant sequence: shifted language equals the unshifted one
    assert factors(FIB, 1, 2).windows == fs.windows


def test_factor_windows_match_sliding_window_generator():
    # Independent generator: slide over a long limit-word prefix.
    for cap in (2, 5, 8):
        fs = factors(FIB, 0, cap)
        prefix = limit_word_prefix(FIB, "1", 5000)
        slid = {prefix[i : i + cap] for i in range(len(prefix) - cap + 1)}
        assert fs.windows == frozenset(slid)


def test_factor_closure_property():
    fs = factors(FIB, 0, 6)
    for w in fs.words():
        for n in range(1, len(w)):
            for i in range(len(w) - n + 1):
                assert w[i : i + n] in fs


def test_fibonacci_complexity_n_plus_1():
    fs = factors(FIB, 0, 50)
    for n in range(1, 51):
        assert fs.count(n) == n + 1


def test_balance_fibonacci():
    cert = balance(FIB, 0, 100)
    assert cert.constant == 1
    assert cert.status == "certified-up-to-L"
    assert cert.length == 100
    assert abs(cert.witness_high.count("1") - cert.witness_low.count("1")) == 1


def test_balance_length_one():
    cert = balance(FIB, 0, 1)
    assert cert.constant == 1
    assert {cert.witness_high, cert.witness_low} == {"1", "2"}


def test_balance_witness_for_unbalanced_pair():
    # language with both 11 and 22: spread at length 2 is 2
    D = DirectiveSequence.periodic([Substitution("112", "221")])
    cert = balance(D, 0, 8)
    assert cert.constant >= 2
    fs = factors(D, 0, 2)
    assert "11" in fs and "22" in fs
    assert cert.per_length_spread[1] == 2


def test_balance_monotone_in_length():
    prev = 0
    for cap in (5, 10, 25, 50, 100):
        c = balance(FIB, 0, cap).constant
        assert c >= prev
        prev = c


def test_balance_propagates_saturation_failure():
    stalled = DirectiveSequence.periodic([Substitution("1", "2")])  # identity map
    with pytest.raises(NotSaturatedError):
        balance(stalled, 0, 3, max_depth=32)
