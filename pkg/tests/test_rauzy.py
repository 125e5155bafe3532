"""Fractal approximations, exchange map, rotation checks, z-walks."""

from __future__ import annotations

import io
import math
import random

import numpy as np
import pytest

from sadic.directive import DirectiveSequence
from sadic.language import limit_word_prefix
from sadic.rauzy import (
    ExchangeMap,
    RauzyApprox,
    exchange,
    fractal_points,
    minimality_proxy,
    orbit_vs_shift,
    rotation_factor,
    subtile_overlap,
    zwalk,
)
from sadic.spectral import DirectionVec, Quadratic, right_eigenvector
from sadic.words import Substitution

FIB = DirectiveSequence.periodic([Substitution("12", "1")])
INV_PHI = (math.sqrt(5) - 1) / 2  # 0.6180339887...
INV_PHI2 = 1 - INV_PHI  # 0.3819660113...


@pytest.fixture(scope="module")
def u():
    return right_eigenvector(FIB)


def test_fractal_points_small(u):
    one = fractal_points(FIB, u, 1)
    assert one.labels == "1"
    assert one.pi0[0] == 0.0
    three = fractal_points(FIB, u, 3)
    assert three.labels == "121"
    assert three.pi0 == pytest.approx([0.0, INV_PHI2, 1 - 2 * INV_PHI], abs=1e-12)


def test_fractal_points_containment(u):
    approx = fractal_points(FIB, u, 100_000)
    assert approx.max_abs() <= 1.0 + 1e-9  # balance constant 1


def test_fractal_csv(u):
    approx = fractal_points(FIB, u, 5)
    buf = io.StringIO()
    approx.write_csv(buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "index,pi0,label"
    assert lines[1] == "0,0.0,1"
    assert len(lines) == 6


def test_exchange_translations(u):
    emap = ExchangeMap.from_direction(u)
    assert emap.t1 == pytest.approx(0.3819660113, abs=1e-9)
    assert emap.t2 == pytest.approx(-0.6180339887, abs=1e-9)
    assert emap.t1 - emap.t2 == 1.0  # exact in floats by construction
    assert exchange(emap, 0.0, "1") == pytest.approx(INV_PHI2, abs=1e-12)
    assert exchange(emap, 0.382, "2") == pytest.approx(-0.236, abs=1e-3)
    assert emap.t1 % 1.0 == pytest.approx(emap.t2 % 1.0, abs=1e-12)


def test_rotation_factor_fibonacci(u):
    rot = rotation_factor(u)
    assert rot.angle == pytest.approx(INV_PHI2, abs=1e-9)
    # exact value (3 - sqrt 5)/2
    from fractions import Fraction

    assert rot.exact == Quadratic(Fraction(3, 2), Fraction(-1, 2), 5)
    assert rot.is_rational is False


def test_rotation_factor_rational_direction():
    sym = DirectionVec.from_exact(Quadratic(1), Quadratic(1))
    rot = rotation_factor(sym)
    assert rot.angle == 0.5
    assert rot.is_rational is True


def test_orbit_vs_shift_fibonacci(u):
    rep = orbit_vs_shift(FIB, u, 1)
    assert rep.mismatches == 0
    rep = orbit_vs_shift(FIB, u, 10_000)
    assert rep.mismatches == 0
    assert rep.first_mismatch is None
    assert rep.angle == pytest.approx(INV_PHI2, abs=1e-12)


def test_orbit_vs_shift_perturbed_angle(u):
    rep = orbit_vs_shift(FIB, u, 1000, angle_perturbation=0.01)
    assert rep.mismatches > 0
    assert rep.first_mismatch is not None


def test_subtile_overlap_fibonacci(u):
    approx = fractal_points(FIB, u, 100_000)
    est = subtile_overlap(approx, 1e-3)
    assert est.measure < 1e-2  # two intervals meeting near one point
    single = fractal_points(FIB, u, 1)
    assert subtile_overlap(single, 1e-3).measure == 0.0


def test_subtile_overlap_merged_labels_control(u):
    approx = fractal_points(FIB, u, 2000)
    merged = RauzyApprox(
        np.concatenate([approx.pi0, approx.pi0]),
        approx.labels + "".join("2" if c == "1" else "1" for c in approx.labels),
        2 * approx.depth,
        approx.u1_simplex,
    )
    est = subtile_overlap(merged, 1e-3)
    assert est.bins_both == est.bins_total
    assert est.measure == pytest.approx(est.bins_total * 1e-3)


def test_subtile_overlap_decay_with_bin_width(u):
    approx = fractal_points(FIB, u, 50_000)
    full = subtile_overlap(approx, 2e-3)
    half = subtile_overlap(approx, 1e-3)
    assert half.measure <= full.measure + 1e-3  # tolerance of one bin mass


def test_minimality_proxy(u):
    word = limit_word_prefix(FIB, "1", 10_000)
    assert minimality_proxy(word, 1)
    assert not minimality_proxy("1" * 100, 1)


def test_zwalk_identical_words():
    w = limit_word_prefix(FIB, "1", 500)
    rep = zwalk(w, w, 400)
    assert rep.max_abs == 0 and rep.step_violations == 0


def test_zwalk_fibonacci_shift():
    w = limit_word_prefix(FIB, "1", 1200)
    rep = zwalk(w, w[1:], 1000, bound=1)
    assert rep.step_violations == 0
    assert rep.bound_violations == 0
    assert rep.max_abs <= 1


def test_zwalk_step_property_random_pairs():
    rng = random.Random(31)
    w = limit_word_prefix(FIB, "1", 5000)
    for _ in range(50):
        i, j = rng.randint(0, 3000), rng.randint(0, 3000)
        rep = zwalk(w[i : i + 1500], w[j : j + 1500], 1000, bound=1)
        assert rep.step_violations == 0
        assert rep.bound_violations == 0


def test_zwalk_length_error():
    with pytest.raises(ValueError):
        zwalk("121", "12", 3)


def test_zwalk_return_to_zero():
    rep = zwalk("12", "21", 2)
    # z: 0, +1, 0 -- returns to zero after leaving it
    assert rep.z == (0, 1, 0)
    assert rep.first_return_to_zero == 2
