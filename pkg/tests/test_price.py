"""Assembled P/R/I/C/E verdicts on concrete systems."""

from __future__ import annotations

from sadic.directive import DirectiveSequence
from sadic.price import PriceParams, price_report
from sadic.words import Substitution

FIB = DirectiveSequence.periodic([Substitution("12", "1")])
TM = DirectiveSequence.periodic([Substitution("12", "21")])


def test_price_fibonacci_all_verified():
    rep = price_report(FIB)
    assert rep.all_verified()
    assert rep.p.witness["h"] == 2
    assert rep.p.witness["block"] == ((2, 1), (1, 1))
    assert rep.p.witness["periodic"] is True
    assert rep.r.witness["periodic"] is True
    assert rep.c.witness["constant"] == 1
    assert rep.e.witness["final_angle"] < 1e-10
    assert rep.n_indices == (1,)


def test_price_thue_morse_like_irreducibility_refuted():
    rep = price_report(TM)
    assert rep.i.status == "refuted"
    # positive incidence matrix: the block condition holds with h = 1
    assert rep.p.status == "verified-on-window"
    assert rep.p.witness["h"] == 1
    assert not rep.all_verified()


def test_price_finite_window_insufficient_data():
    D = DirectiveSequence.finite_window([Substitution("12", "1")])
    rep = price_report(D)
    assert rep.p.status == "unknown"
    assert rep.r.status == "unknown"
    assert rep.e.status == "unknown"
    assert not rep.all_verified()


def test_price_json_shape():
    rep = price_report(FIB, PriceParams(recurrence_max_length=3))
    data = rep.to_json()
    assert set(data) == {"P", "R", "I", "C", "E", "n_indices", "l_indices"}
    for key in "PRICE":
        assert set(data[key]) == {"status", "witness"}
