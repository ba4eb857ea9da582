"""Coefficient towers: digit arithmetic, valuation, reduction, windows."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from ratseries.coefficients import (
    CHAR0,
    CHARP,
    FIELD_FP,
    FIELD_Q,
    INFINITY,
    CoeffElement,
    RingDescriptor,
    ring_make,
)
from ratseries.errors import (
    DomainError,
    NonUnitError,
    ParameterError,
    RingMismatchError,
)

GRID = [(2, 3, 1, 4), (3, 2, 2, 3), (5, 5, 1, 4)]


def test_ring_make_examples():
    ring = ring_make(CHAR0, 3, 2, 1, 4)
    pi = ring.uniformizer()
    assert pi * pi == ring.from_int(3)
    charp = ring_make(CHARP, 3, 2, 1)
    s = charp.uniformizer()
    assert (s * s).is_zero()
    flat = ring_make(CHAR0, 5, 1, 0, 3)
    assert flat.ram == 1 and flat.modulus == 125


def test_ring_make_errors():
    with pytest.raises(ParameterError):
        ring_make(CHAR0, 3, 0, 1, 4)
    with pytest.raises(ParameterError):
        ring_make(CHAR0, 3, 2, 1, 0)
    with pytest.raises(ParameterError):
        ring_make(CHARP, 3, 2, 1, laurent=True)
    with pytest.raises(ParameterError):
        ring_make(CHAR0, 4, 2, 1, 2)  # 4 is not prime


def _poly_quotient_oracle(p, e, modulus, a, b):
    """Independent multiplication oracle in Z[x]/(x^e - p) mod p^M."""
    out = [0] * (2 * e)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    for k in range(2 * e - 1, e - 1, -1):
        out[k - e] += p * out[k]
        out[k] = 0
    return tuple(x % modulus for x in out[:e])


def test_digit_carry_against_poly_oracle():
    rng = random.Random(11)
    for p, d, k, m in GRID:
        ring = ring_make(CHAR0, p, d, k, m)
        for _ in range(200):
            a = ring.random_element(rng)
            b = ring.random_element(rng)
            want = _poly_quotient_oracle(p, ring.ram, ring.modulus, a.data, b.data)
            assert (a * b).data == want


def test_add_example_digit_carry():
    # (1 + pi) + (p - 1) = pi + p in Z[x]/(x^2 - 3) inside the 3^4 window
    ring = ring_make(CHAR0, 3, 2, 1, 4)
    left = (ring.one() + ring.uniformizer()) + ring.from_int(2)
    assert left == ring.uniformizer() + ring.from_int(3)
    assert left.data == (3, 1)


def test_val_examples():
    ring = ring_make(CHAR0, 3, 2, 1, 4)
    assert ring.from_int(3).val() == 1
    assert ring.uniformizer().val() == Fraction(1, 2)
    assert ring.zero().val() == INFINITY


def test_val_properties():
    rng = random.Random(12)
    for p, d, k, m in GRID:
        ring = ring_make(CHAR0, p, d, k, m)
        cap = (ring.window - 1) // 2
        for _ in range(300):
            a = ring.random_element(rng, max_val_pi=cap)
            b = ring.random_element(rng, max_val_pi=cap)
            if a.is_zero() or b.is_zero():
                continue
            assert (a * b).val() == a.val() + b.val()
            s = a + b
            if not s.is_zero():
                assert s.val() >= min(a.val(), b.val())


def test_invert_examples():
    ring = ring_make(CHAR0, 3, 1, 0, 4)
    assert ring.one().invert() == ring.one()
    inv = (ring.one() + ring.from_int(3)).invert()
    # geometric series 1 - 3 + 9 - 27 mod 81
    assert inv == ring.from_int(1 - 3 + 9 - 27)
    pi = ring_make(CHAR0, 3, 2, 1, 4).uniformizer()
    ipi = pi.to_laurent().invert()
    assert ipi.val() == Fraction(-1, 2)
    assert ipi * pi.to_laurent() == pi.ring.fraction_field().one()


def test_invert_errors():
    ring = ring_make(CHAR0, 3, 2, 1, 4)
    with pytest.raises(NonUnitError):
        ring.uniformizer().invert()
    with pytest.raises(ZeroDivisionError):
        ring.zero().invert()


def test_invert_random_units():
    rng = random.Random(13)
    for p, d, k, m in GRID:
        ring = ring_make(CHAR0, p, d, k, m)
        for _ in range(100):
            u = ring.random_element(rng, unit=True)
            assert u * u.invert() == ring.one()
    charp = ring_make(CHARP, 3, 2, 2)
    for _ in range(100):
        u = charp.random_element(rng, unit=True)
        assert u * u.invert() == charp.one()


def test_promote_examples():
    r0 = ring_make(CHAR0, 3, 2, 0, 4)
    r1 = ring_make(CHAR0, 3, 2, 1, 4)
    r2 = ring_make(CHAR0, 3, 2, 2, 4)
    assert r0.from_int(3).promote(1) == r1.from_int(3)
    assert r1.uniformizer().promote(2) == r2.pi_power(2)
    with pytest.raises(ParameterError):
        r1.uniformizer().promote(0)


def test_promote_preserves_val_and_commutes():
    rng = random.Random(14)
    ring = ring_make(CHAR0, 3, 2, 1, 3)
    for _ in range(200):
        a = ring.random_element(rng)
        b = ring.random_element(rng)
        assert a.promote(2).val() == a.val()
        assert (a + b).promote(2) == a.promote(2) + b.promote(2)
        assert (a * b).promote(2) == a.promote(2) * b.promote(2)


def test_mod_p_examples():
    ring = ring_make(CHAR0, 3, 2, 1, 4)
    assert ring.from_int(3).mod_p().is_zero()
    pi_bar = ring.uniformizer().mod_p()
    assert not pi_bar.is_zero()
    charp = ring.residue_ring()
    assert (ring.one() + ring.uniformizer()).mod_p() == charp.one() + charp.uniformizer()


def test_mod_p_is_ring_homomorphism():
    rng = random.Random(15)
    ring = ring_make(CHAR0, 3, 2, 2, 3)
    for _ in range(300):
        a = ring.random_element(rng)
        b = ring.random_element(rng)
        assert (a + b).mod_p() == a.mod_p() + b.mod_p()
        assert (a * b).mod_p() == a.mod_p() * b.mod_p()


def test_mod_p_kernel_characterization_exhaustive():
    # every element of the K=1 ring with M <= 3: kernel == {val >= 1}
    for m in (1, 2, 3):
        ring = ring_make(CHAR0, 2, 2, 1, m)
        for c0 in range(ring.modulus):
            for c1 in range(ring.modulus):
                a = CoeffElement(ring, (c0, c1))
                in_kernel = a.mod_p().is_zero()
                assert in_kernel == (a.is_zero() or a.val() >= 1)


def test_mod_p_rejects_negative_offsets():
    ring = ring_make(CHAR0, 3, 2, 1, 4)
    neg = ring.uniformizer().to_laurent().invert()
    with pytest.raises(DomainError):
        neg.mod_p()


def test_lift_is_a_section():
    ring = ring_make(CHAR0, 3, 2, 1, 4)
    rng = random.Random(16)
    for _ in range(100):
        a = ring.random_element(rng).mod_p()
        assert a.lift(4).mod_p() == a


def test_separability_at_precision():
    # the only element at or beyond the precision window is canonical zero
    ring = ring_make(CHAR0, 2, 2, 1, 2)
    for c0 in range(ring.modulus):
        for c1 in range(ring.modulus):
            a = CoeffElement(ring, (c0, c1))
            if not a.is_zero():
                assert a.val() < ring.precision
    # promoting precision never resurrects a canonical zero
    z = ring.pi_power(1) * ring.pi_power(ring.window - 1)
    assert z.is_zero() and z.underflow
    assert z.promote(2).is_zero()


def test_underflow_flag_excluded_from_equality():
    ring = ring_make(CHAR0, 2, 2, 1, 2)
    z = ring.pi_power(2) * ring.pi_power(2)
    assert z.is_zero() and z.underflow
    assert z == ring.zero()


def test_ring_mismatch_error():
    a = ring_make(CHAR0, 3, 2, 1, 4).one()
    b = ring_make(CHAR0, 3, 2, 2, 4).one()
    with pytest.raises(RingMismatchError):
        a + b


def test_exact_fields():
    fp = ring_make(FIELD_FP, 5)
    assert fp.from_int(7) == fp.from_int(2)
    assert fp.from_int(2).invert() == fp.from_int(3)
    assert fp.from_int(2).val() == 0 and fp.zero().val() == INFINITY
    q = ring_make(FIELD_Q)
    x = q.from_fraction(Fraction(-3, 7))
    assert x.invert() * x == q.one()


def test_json_round_trip_all_kinds():
    rng = random.Random(17)
    rings = [
        ring_make(CHAR0, 3, 2, 1, 4),
        ring_make(CHAR0, 3, 2, 1, 4).fraction_field(),
        ring_make(CHARP, 3, 2, 2),
        ring_make(FIELD_FP, 7),
        ring_make(FIELD_Q),
    ]
    for ring in rings:
        assert RingDescriptor.from_json(ring.to_json()) == ring
        for _ in range(40):
            a = ring.random_element(rng)
            doc = json.loads(json.dumps(a.to_json()))
            assert CoeffElement.from_json(ring, doc) == a
    neg = rings[1].pi_power(-3)
    assert CoeffElement.from_json(rings[1], neg.to_json()) == neg
