"""Cohomology of twists: closed forms, the boundary oracle, growth tables."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from ratseries.cech import (
    TwistDegree,
    cech_oracle_ranks,
    cech_report,
    h0_rank,
    hn_rank,
    matrix_rank_exact,
    matrix_rank_mod_p,
    rank_growth,
    twist_add,
)
from ratseries.errors import (
    DomainError,
    ModeMismatchError,
    ParameterError,
    ResourceLimitError,
)


def test_h0_examples():
    assert h0_rank(1, Fraction(2), 1) == 3
    assert h0_rank(1, Fraction(2), 2) == 5
    assert h0_rank(2, Fraction(1), 3) == math.comb(5, 2) == 10
    assert h0_rank(1, Fraction(-1), 4) == 0


def test_h0_enumeration_matches_closed_form():
    for scale in (1, 2, 4):
        for t in range(0, 7):
            m = Fraction(t, scale)
            count, basis = h0_rank(1, m, scale, with_basis=True)
            assert count == len(basis)
            assert all(sum(mono) == m and min(mono) >= 0 for mono in basis)


def test_hn_examples():
    assert hn_rank(1, Fraction(2), 1) == 1
    assert hn_rank(1, Fraction(2), 2) == 3
    assert hn_rank(2, Fraction(3), 1) == 1
    assert hn_rank(2, Fraction(2), 1) == 0  # m * scale <= n


def test_hn_enumeration_matches_closed_form():
    for scale in (1, 2):
        for t in range(1, 7):
            m = Fraction(t, scale)
            count, basis = hn_rank(1, m, scale, with_basis=True)
            assert count == len(basis)
            assert all(sum(mono) == -m and max(mono) < 0 for mono in basis)


def test_denominator_bound_error():
    with pytest.raises(DomainError):
        h0_rank(1, Fraction(1, 2), 1)
    with pytest.raises(DomainError):
        cech_report(1, TwistDegree.padic(Fraction(1, 2), 2), 0)


def test_report_examples():
    rep = cech_report(2, TwistDegree.padic(0, 2), 0, with_oracle=True)
    assert rep["ranks"] == [1, 0, 0] and rep["oracle"]["agrees"]

    rep = cech_report(1, TwistDegree.padic(-1, 2), 0, with_oracle=True)
    assert rep["ranks"] == [0, 0] and rep["oracle"]["agrees"]

    rep = cech_report(2, TwistDegree.padic(-4, 2), 1, with_oracle=True)
    assert rep["ranks"] == [0, 0, math.comb(7, 2)]
    assert rep["oracle"]["agrees"]


def test_report_fractional_level_one():
    # at level 1 the twist -1 acquires the interior point (-1/2, -1/2)
    rep = cech_report(1, TwistDegree.padic(-1, 2), 1, with_oracle=True)
    assert rep["ranks"] == [0, 1] and rep["oracle"]["agrees"]


def test_oracle_agreement_grid():
    for n in (1, 2):
        for p in (2, 3):
            for level in (0, 1):
                scale = p**level
                for t in range(-6, 7):
                    m = TwistDegree.padic(Fraction(t, scale), p)
                    rep = cech_report(n, m, level, with_oracle=True)
                    assert rep["oracle"]["agrees"], (n, p, level, t)
                    if n == 2:
                        assert rep["ranks"][1] == 0
                        assert rep["oracle"]["ranks"][1] == 0


def test_classical_degeneration():
    for n in (1, 2):
        for t in range(-6, 7):
            rep = cech_report(n, TwistDegree.padic(t, 2), 0)
            want_h0 = math.comb(t + n, n) if t >= 0 else 0
            want_hn = math.comb(-t - 1, n) if -t - 1 >= n else 0
            assert rep["ranks"][0] == want_h0
            assert rep["ranks"][n] == want_hn


def test_rational_mode_reports():
    rep = cech_report(1, TwistDegree.rational(Fraction(1, 3)), 6, with_oracle=True)
    assert rep["ranks"][0] == 3 and rep["oracle"]["agrees"]
    assert rep["oracle"]["field"] == "Q"
    rep = cech_report(2, TwistDegree.rational(Fraction(-3, 2)), 2, with_oracle=True)
    assert rep["oracle"]["agrees"]


def test_basis_output():
    rep = cech_report(1, TwistDegree.padic(2, 2), 1, with_basis=True)
    assert len(rep["h0_basis"]) == 5
    assert rep["hn_basis"] == []


def test_growth_examples():
    table = rank_growth(1, TwistDegree.padic(2, 2), range(4))
    assert [r["rank"] for r in table["rows"]] == [3, 5, 9, 17]
    assert table["strictly_increasing"]

    table = rank_growth(1, TwistDegree.padic(-2, 2), range(3))
    assert [r["rank"] for r in table["rows"]] == [1, 3, 7]
    assert all(r["i"] == 1 for r in table["rows"])

    table = rank_growth(1, TwistDegree.padic(0, 2), range(3))
    assert [r["rank"] for r in table["rows"]] == [1, 1, 1]
    assert table["strictly_increasing"]  # vacuous for the zero twist


def test_growth_needs_padic_mode():
    with pytest.raises(ModeMismatchError):
        rank_growth(1, TwistDegree.rational(2), range(2))


def test_twist_arithmetic():
    half = TwistDegree.padic(Fraction(1, 2), 2)
    assert twist_add(half, half).value == 1
    assert twist_add(half, TwistDegree.padic(0, 2)) == half
    assert twist_add(half, -half).value == 0
    with pytest.raises(ModeMismatchError):
        twist_add(half, TwistDegree.rational(1))
    with pytest.raises(ParameterError):
        TwistDegree.padic(Fraction(1, 3), 2)


def test_oracle_resource_ceiling():
    with pytest.raises(ResourceLimitError):
        cech_oracle_ranks(2, Fraction(200), 1, 2, ceiling=100)


def test_matrix_rank_helpers():
    identity = [[1, 0], [0, 1]]
    assert matrix_rank_mod_p(identity, 5) == 2
    assert matrix_rank_exact([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1
    assert matrix_rank_mod_p([[2, 4], [1, 2]], 5) == 1
    # rank can drop in characteristic p
    assert matrix_rank_mod_p([[2]], 2) == 0
    assert matrix_rank_exact([[Fraction(2)]]) == 1
    assert matrix_rank_mod_p([], 3) == 0
