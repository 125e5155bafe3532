"""Word and substitution algebra: frozen examples plus randomized identities."""

from __future__ import annotations

import random

import pytest

from sadic.words import Mat2, Substitution, abelianize, check_word

FIB = Substitution("12", "1")


def random_substitution(rng: random.Random, max_len: int = 3) -> Substitution:
    def img():
        return "".join(rng.choice("12") for _ in range(rng.randint(1, max_len)))

    return Substitution(img(), img())


def random_word(rng: random.Random, max_len: int = 40) -> str:
    return "".join(rng.choice("12") for _ in range(rng.randint(0, max_len)))


def test_abelianize_examples():
    assert abelianize("12") == (1, 1)
    assert abelianize("") == (0, 0)
    assert abelianize("11211") == (4, 1)


def test_apply_examples():
    assert FIB.apply("12") == "121"
    assert FIB.apply("") == ""
    assert Substitution("112", "12").apply("21") == "12112"


def test_incidence_examples():
    assert FIB.incidence() == Mat2(1, 1, 1, 0)
    assert Substitution("12", "21").incidence() == Mat2(1, 1, 1, 1)
    assert Substitution("112", "12").incidence() == Mat2(2, 1, 1, 1)


def test_compose_examples():
    sq = FIB.compose(FIB)
    assert (sq.image1, sq.image2) == ("121", "12")
    ident = Substitution.identity()
    assert FIB.compose(ident) == FIB
    assert ident.compose(FIB) == FIB
    assert sq.incidence() == Mat2(1, 1, 1, 0) ** 2 == Mat2(2, 1, 1, 1)


def test_unimodularity_examples():
    assert FIB.is_unimodular()  # det -1
    assert FIB.incidence().det() == -1
    assert not Substitution("12", "21").is_unimodular()  # det 0
    assert Substitution("112", "12").is_unimodular()  # det 1


def test_parse_round_trip():
    s = Substitution.parse(" 1 -> 12 , 2->1 ")
    assert s == FIB
    assert Substitution.parse(str(s)) == s
    with pytest.raises(ValueError):
        Substitution.parse("1->12")
    with pytest.raises(ValueError):
        Substitution.parse("1->12, 1->1")
    with pytest.raises(ValueError):
        Substitution.parse("1->12, 2->3")
    with pytest.raises(ValueError):
        Substitution("", "1")


def test_check_word_rejects_bad_letters():
    assert check_word("1212") == "1212"
    with pytest.raises(ValueError):
        check_word("120")


def test_abelianize_additivity_random():
    rng = random.Random(101)
    for _ in range(300):
        u, v = random_word(rng), random_word(rng)
        au, av, auv = abelianize(u), abelianize(v), abelianize(u + v)
        assert auv == (au[0] + av[0], au[1] + av[1])


def test_commutation_identity_random():
    # Incidence and abelianization commute: M_s l(w) = l(s(w)), exactly.
    rng = random.Random(102)
    for _ in range(300):
        s, w = random_substitution(rng), random_word(rng)
        assert s.incidence().mul_vec(abelianize(w)) == abelianize(s.apply(w))


def test_incidence_of_composition_random():
    rng = random.Random(103)
    for _ in range(300):
        s, t = random_substitution(rng), random_substitution(rng)
        assert s.compose(t).incidence() == s.incidence() * t.incidence()


def test_image_length_formula_random():
    rng = random.Random(104)
    for _ in range(200):
        s, w = random_substitution(rng), random_word(rng)
        n1, n2 = abelianize(w)
        assert len(s.apply(w)) == n1 * len(s.image1) + n2 * len(s.image2)


def test_matrix_power_and_vec():
    m = Mat2(1, 1, 1, 0)
    assert m**0 == Mat2.identity()
    assert m**10 == Mat2(89, 55, 55, 34)
    assert m.mul_vec((2, 3)) == (5, 2)
    assert m.transpose() == m  # Fibonacci incidence matrix is symmetric
    assert Mat2(1, 2, 3, 4).transpose() == Mat2(1, 3, 2, 4)
