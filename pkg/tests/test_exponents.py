"""Exponent lattice: normalization, arithmetic, ordering, membership."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ratseries.errors import ModeMismatchError, ParameterError, ShapeMismatchError
from ratseries.exponents import (
    Exponent,
    MultiExponent,
    exp_normalize,
    mexp_cmp,
    monomial_ideal_member,
    monomial_ideal_member_bruteforce,
)


def dyadic(num, scale, base=2):
    return Exponent.padic(num, scale, base)


def test_normalize_examples():
    assert exp_normalize(4, 2, 2).value == 1
    assert exp_normalize(4, 2, 2).scale == 0
    assert exp_normalize(0, 5, 3) == exp_normalize(0, 0, 3)
    # 6 / 2**1 has value 3, an integer: scale collapses to 0
    e = exp_normalize(6, 1, 2)
    assert (e.numerator, e.scale) == (3, 0)


def test_normalize_idempotent():
    rng = random.Random(1)
    for _ in range(200):
        e = exp_normalize(rng.randrange(0, 200), rng.randrange(0, 6), 2)
        again = exp_normalize(e.numerator, e.scale, 2)
        assert again == e


def test_normalized_numerator_coprime_to_base():
    e = exp_normalize(10, 3, 2)  # 10/8 = 5/4
    assert e.numerator == 5 and e.scale == 2
    assert e.numerator % 2 == 1


def test_add_examples():
    assert (dyadic(1, 1) + dyadic(1, 1)).value == 1
    assert (dyadic(1, 1) + dyadic(1, 2)).value == Fraction(3, 4)
    a = Exponent.rational(1, 3) + Exponent.rational(1, 2)
    assert a.value == Fraction(5, 6)


def test_add_mode_mismatch():
    with pytest.raises(ModeMismatchError):
        dyadic(1, 1, 2) + Exponent.rational(1, 2)
    with pytest.raises(ModeMismatchError):
        dyadic(1, 1, 2) + dyadic(1, 1, 3)


@given(
    st.integers(min_value=0, max_value=500),
    st.integers(min_value=0, max_value=6),
    st.integers(min_value=0, max_value=500),
    st.integers(min_value=0, max_value=6),
    st.integers(min_value=0, max_value=500),
    st.integers(min_value=0, max_value=6),
)
def test_add_associative_commutative(n1, k1, n2, k2, n3, k3):
    a, b, c = (exp_normalize(n, k, 2) for n, k in ((n1, k1), (n2, k2), (n3, k3)))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a


def test_scale_root_examples():
    assert dyadic(3, 1).scale_root(1).value == Fraction(3, 4)
    assert dyadic(0, 0).scale_root(7).value == 0
    assert Exponent.padic(1, 0, 3).scale_root(2).value == Fraction(1, 9)


def test_scale_root_composition():
    rng = random.Random(2)
    for _ in range(100):
        e = exp_normalize(rng.randrange(0, 50), rng.randrange(0, 4), 2)
        i, j = rng.randrange(0, 3), rng.randrange(0, 3)
        assert e.scale_root(i).scale_root(j) == e.scale_root(i + j)


def test_scale_root_rejected_in_rational_mode():
    with pytest.raises(ModeMismatchError):
        Exponent.rational(1, 2).scale_root(1)


def test_negative_rejected():
    with pytest.raises(ParameterError):
        Exponent(Fraction(-1, 2), "padic", 2)
    with pytest.raises(ParameterError):
        Exponent(Fraction(1, 3), "padic", 2)  # denominator not a power of 2


def _mk(values):
    return MultiExponent.make([Fraction(v) for v in values], "padic", 2)


def test_cmp_examples():
    assert mexp_cmp(_mk([Fraction(1, 2), 0]), _mk([0, 1])) < 0
    assert mexp_cmp(_mk([Fraction(1, 2), Fraction(1, 2)]), _mk([1, 0])) < 0
    a = _mk([Fraction(3, 4), 2])
    assert mexp_cmp(a, a) == 0


def test_cmp_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        mexp_cmp(_mk([1]), _mk([1, 0]))


def test_cmp_total_order_properties():
    rng = random.Random(3)
    sample = [
        _mk([Fraction(rng.randrange(0, 8), 2 ** rng.randrange(0, 3)) for _ in range(2)])
        for _ in range(60)
    ]
    for a in sample:
        for b in sample:
            ab, ba = mexp_cmp(a, b), mexp_cmp(b, a)
            assert ab == -ba
            if ab == 0:
                assert a.sort_key() == b.sort_key()
            if a.total_degree() < b.total_degree():
                assert ab < 0
    for a in sample:
        for b in sample:
            for c in sample:
                if mexp_cmp(a, b) <= 0 and mexp_cmp(b, c) <= 0:
                    assert mexp_cmp(a, c) <= 0


def test_text_round_trip():
    for e in [dyadic(3, 2), dyadic(0, 0), dyadic(7, 0), Exponent.rational(5, 6)]:
        text = str(e)
        back = Exponent.parse(text, e.mode, e.base)
        assert back == e
        assert str(back) == text


def test_json_round_trip():
    for e in [dyadic(3, 2), dyadic(0, 0), Exponent.rational(7, 3)]:
        assert Exponent.from_json(e.to_json(), e.mode, e.base) == e


def test_membership_examples():
    # T in (T^(1/2))
    assert monomial_ideal_member([_mk([Fraction(1, 2), 0])], _mk([1, 0]))
    # reflexivity
    t = _mk([Fraction(3, 4), 1])
    assert monomial_ideal_member([t], t)
    # the strictly growing chain never reaches the next root
    one_var = lambda v: MultiExponent.make([Fraction(v)], "padic", 2)
    for k in range(5):
        gens = [one_var(Fraction(1, 2**j)) for j in range(k + 1)]
        assert not monomial_ideal_member(gens, one_var(Fraction(1, 2 ** (k + 1))))


def test_membership_empty_gens():
    with pytest.raises(ParameterError):
        monomial_ideal_member([], _mk([1, 0]))


def test_membership_agrees_with_bruteforce():
    rng = random.Random(4)
    for _ in range(40):
        gens = [
            _mk([Fraction(rng.randrange(0, 5), 2 ** rng.randrange(0, 2)) for _ in range(2)])
            for _ in range(rng.randrange(1, 3))
        ]
        t = _mk([Fraction(rng.randrange(0, 5), 2 ** rng.randrange(0, 2)) for _ in range(2)])
        fast = monomial_ideal_member(gens, t)
        slow = monomial_ideal_member_bruteforce(gens, t, scale_bound=2, degree_bound=5)
        assert fast == slow
