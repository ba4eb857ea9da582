"""Finite-precision exact models of the admissible coefficient rings.

Four kinds of ring are supported, selected by :class:`RingDescriptor.kind`:

``char0-eka``
    The depth-K stage Z_p[p^(1/d^K)] of the ramified tower, computed in the
    finite quotient Z[x]/(x^e - p, p^M) with e = d^K.  The quotient is an
    honest ring, so ring laws hold exactly; the uniformizer is pi = p^(1/e)
    and the precision window is val >= M (elements at or beyond it collapse
    to the canonical zero).  Elements are stored as coordinate vectors in
    the basis 1, pi, ..., pi^(e-1) over Z/p^M; the pi-adic digit expansion
    used for printing and serialization is the interleaving of the base-p
    digits of the coordinates.

``char0-eka`` with ``laurent``
    The fraction-field window K = R[1/pi]: a pi-power shift (any sign) times
    a unit mantissa known to M p-digits.  Multiplication and inversion are
    exact on mantissas; addition renormalizes after cancellation and zero
    fills the digits above the shared window (floating-point style loss).

``charp-eka``
    The residue avatar F_p[p^(1/d^K)] = F_p[s]/(s^e), a vector of length e
    over F_p.

``exact-field-Fp`` / ``exact-field-Q``
    Exact prime fields with the trivial valuation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DomainError,
    NonUnitError,
    ParameterError,
    RingMismatchError,
    SchemaError,
)

CHAR0 = "char0-eka"
CHARP = "charp-eka"
FIELD_FP = "exact-field-Fp"
FIELD_Q = "exact-field-Q"

INFINITY = float("inf")

# Test instrumentation: the image of x**e during char-0 multiplication is
# p + _CARRY_FAULT.  Nonzero values corrupt the carry rule on purpose so the
# selftest can demonstrate that the valuation properties catch it.
_CARRY_FAULT = 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def frac_str(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(text: str) -> Fraction:
    try:
        if "/" in text:
            a, b = text.split("/", 1)
            return Fraction(int(a), int(b))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational literal {text!r}") from exc


@dataclass(frozen=True)
class RingDescriptor:
    """Parameters of one coefficient ring; see the module docstring."""

    kind: str
    p: int = 0
    d: int = 1
    depth: int = 0
    precision: int = 1
    laurent: bool = False

    def __post_init__(self):
        if self.kind not in (CHAR0, CHARP, FIELD_FP, FIELD_Q):
            raise ParameterError(f"unknown ring kind {self.kind!r}")
        if self.kind != FIELD_Q and not is_prime(self.p):
            raise ParameterError(f"p = {self.p} is not prime")
        if self.kind in (CHAR0, CHARP):
            if self.d < 1:
                raise ParameterError("root index d must be >= 1")
            if self.depth < 0:
                raise ParameterError("depth K must be >= 0")
        if self.kind == CHAR0 and self.precision < 1:
            raise ParameterError("precision M must be >= 1")
        if self.laurent and self.kind != CHAR0:
            raise ParameterError("only char0-eka rings admit a laurent window")

    # -- derived quantities -------------------------------------------------

    @property
    def ram(self) -> int:
        """Ramification index e = d**K; pi**e is the image of p."""
        return self.d**self.depth

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def window(self) -> int:
        """Number of meaningful pi-digits (char0 kinds)."""
        return self.ram * self.precision

    # -- relatives ----------------------------------------------------------

    def residue_ring(self) -> "RingDescriptor":
        if self.kind != CHAR0:
            raise ParameterError("only char0-eka rings reduce mod p")
        return RingDescriptor(CHARP, self.p, self.d, self.depth)

    def fraction_field(self) -> "RingDescriptor":
        if self.kind != CHAR0:
            raise ParameterError("only char0-eka rings have a rig window")
        return RingDescriptor(CHAR0, self.p, self.d, self.depth, self.precision, True)

    def integral_ring(self) -> "RingDescriptor":
        if self.kind != CHAR0:
            return self
        return RingDescriptor(CHAR0, self.p, self.d, self.depth, self.precision, False)

    def deepen(self, delta: int = 1) -> "RingDescriptor":
        if self.kind not in (CHAR0, CHARP):
            raise ParameterError("exact fields have no tower to extend")
        if delta < 0:
            raise ParameterError("tower depth only grows")
        return RingDescriptor(
            self.kind, self.p, self.d, self.depth + delta, self.precision, self.laurent
        )

    # -- element constructors ------------------------------------------------

    def zero(self) -> "CoeffElement":
        if self.kind == CHAR0 and self.laurent:
            return CoeffElement(self, (0, (0,) * self.ram))
        if self.kind == CHAR0:
            return CoeffElement(self, (0,) * self.ram)
        if self.kind == CHARP:
            return CoeffElement(self, (0,) * self.ram)
        if self.kind == FIELD_FP:
            return CoeffElement(self, 0)
        return CoeffElement(self, Fraction(0))

    def one(self) -> "CoeffElement":
        return self.from_int(1)

    def from_int(self, n: int) -> "CoeffElement":
        if self.kind == CHAR0:
            vec = (n % self.modulus,) + (0,) * (self.ram - 1)
            el = CoeffElement(self.integral_ring(), vec)
            return el.to_laurent() if self.laurent else el
        if self.kind == CHARP:
            return CoeffElement(self, (n % self.p,) + (0,) * (self.ram - 1))
        if self.kind == FIELD_FP:
            return CoeffElement(self, n % self.p)
        return CoeffElement(self, Fraction(n))

    def from_fraction(self, q: Fraction) -> "CoeffElement":
        if self.kind == FIELD_Q:
            return CoeffElement(self, Fraction(q))
        if self.kind == FIELD_FP:
            if q.denominator % self.p == 0:
                raise DomainError(f"{q} has no image in F_{self.p}")
            return CoeffElement(
                self, q.numerator * pow(q.denominator, -1, self.p) % self.p
            )
        raise ParameterError("fractions only land in exact fields")

    def pi_power(self, k: int) -> "CoeffElement":
        """pi**k; k may be negative in laurent mode."""
        if self.kind == CHAR0:
            if k < 0:
                if not self.laurent:
                    raise DomainError("negative pi powers need the laurent window")
                return CoeffElement(self, (k, (1,) + (0,) * (self.ram - 1)))
            if self.laurent:
                return CoeffElement(self, (k, (1,) + (0,) * (self.ram - 1)))
            return self._from_pi_digits({k: 1})
        if self.kind == CHARP:
            if k < 0:
                raise DomainError("charp rings have no negative powers")
            vec = [0] * self.ram
            if k < self.ram:
                vec[k] = 1
            return CoeffElement(self, tuple(vec))
        raise ParameterError("exact fields have no uniformizer")

    def uniformizer(self) -> "CoeffElement":
        return self.pi_power(1)

    def _from_pi_digits(self, digits: dict[int, int]) -> "CoeffElement":
        """Integral char0 element from a sparse pi-digit map (values in Z)."""
        vec = [0] * self.ram
        for pos, digit in digits.items():
            if pos < 0:
                raise DomainError("negative pi powers need the laurent window")
            j = pos % self.ram
            i = pos // self.ram
            vec[j] = (vec[j] + digit * self.p**i) % self.modulus
        return CoeffElement(self, tuple(vec))

    def random_element(
        self, rng: random.Random, unit: bool = False, max_val_pi: int | None = None
    ) -> "CoeffElement":
        """Uniform-ish random element, for property tests.

        ``unit`` forces valuation zero; ``max_val_pi`` produces
        pi**k * unit with k <= max_val_pi (keeps products inside the window).
        """
        if self.kind == CHAR0:
            if max_val_pi is not None:
                k = rng.randrange(max_val_pi + 1)
                u = self.integral_ring().random_element(rng, unit=True)
                el = self.integral_ring().pi_power(k) * u
            else:
                vec = [rng.randrange(self.modulus) for _ in range(self.ram)]
                if unit:
                    while vec[0] % self.p == 0:
                        vec[0] = rng.randrange(self.modulus)
                el = CoeffElement(self.integral_ring(), tuple(vec))
            return el.to_laurent() if self.laurent else el
        if self.kind == CHARP:
            vec = [rng.randrange(self.p) for _ in range(self.ram)]
            if unit and vec[0] == 0:
                vec[0] = rng.randrange(1, self.p)
            return CoeffElement(self, tuple(vec))
        if self.kind == FIELD_FP:
            lo = 1 if unit else 0
            return CoeffElement(self, rng.randrange(lo, self.p))
        num = rng.randrange(-50, 51)
        if unit and num == 0:
            num = 1
        return CoeffElement(self, Fraction(num, rng.randrange(1, 20)))

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p if self.kind != FIELD_Q else None,
            "d": self.d if self.kind in (CHAR0, CHARP) else None,
            "K": self.depth if self.kind in (CHAR0, CHARP) else None,
            "M": self.precision if self.kind == CHAR0 else None,
            "laurent": self.laurent,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RingDescriptor":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise SchemaError("ring descriptor must be an object with a 'kind'")
        kind = doc["kind"]
        try:
            return cls(
                kind,
                int(doc.get("p") or 0),
                int(doc.get("d") or 1),
                int(doc.get("K") or 0),
                int(doc.get("M") or 1),
                bool(doc.get("laurent", False)),
            )
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad ring descriptor {doc!r}") from exc

    def __str__(self) -> str:
        if self.kind == CHAR0:
            tag = "K" if self.laurent else "Z"
            return (
                f"{tag}_{self.p}[{self.p}^(1/{self.ram})] mod {self.p}^{self.precision}"
            )
        if self.kind == CHARP:
            return f"F_{self.p}[s]/(s^{self.ram})"
        if self.kind == FIELD_FP:
            return f"F_{self.p}"
        return "Q"


def ring_make(
    kind: str,
    p: int = 0,
    d: int = 1,
    depth: int = 0,
    precision: int = 1,
    laurent: bool = False,
) -> RingDescriptor:
    return RingDescriptor(kind, p, d, depth, precision, laurent)


@dataclass(frozen=True)
class CoeffElement:
    """One element of a coefficient ring, in canonical form.

    ``data`` is kind-specific: a coordinate vector for char0 integral,
    ``(shift, mantissa)`` for laurent, a coefficient vector for charp and a
    scalar for exact fields.  ``underflow`` marks results of nonzero
    operands that collapsed to zero at precision; it never takes part in
    equality.
    """

    ring: RingDescriptor
    data: object
    underflow: bool = field(default=False, compare=False)

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        k = self.ring.kind
        if k == CHAR0 and self.ring.laurent:
            return all(c == 0 for c in self.data[1])
        if k in (CHAR0, CHARP):
            return all(c == 0 for c in self.data)
        return self.data == 0

    def is_unit(self) -> bool:
        if self.is_zero():
            return False
        if self.ring.laurent:
            return True
        return self.val() == 0

    # -- valuation -------------------------------------------------------------

    def _val_pi(self) -> int:
        """pi-power valuation of a nonzero char0-integral / charp element."""
        ring = self.ring
        if ring.kind == CHAR0:
            best = None
            for j, c in enumerate(self.data):
                if c == 0:
                    continue
                cand = ring.ram * _vp(c, ring.p) + j
                if best is None or cand < best:
                    best = cand
            return best
        for j, c in enumerate(self.data):
            if c != 0:
                return j
        raise ValueError("valuation of zero")

    def val(self):
        """Valuation normalized so val(p) = 1; +inf for zero."""
        if self.is_zero():
            return INFINITY
        ring = self.ring
        if ring.kind == CHAR0 and ring.laurent:
            return Fraction(self.data[0], ring.ram)
        if ring.kind in (CHAR0, CHARP):
            return Fraction(self._val_pi(), ring.ram)
        return Fraction(0)

    # -- pi-digit helpers (char0 integral vectors) ------------------------------

    def _pi_digits(self) -> list[int]:
        """Full pi-digit expansion, length ram * precision."""
        ring = self.ring
        digits = [0] * ring.window
        for j, c in enumerate(self.data):
            for i in range(ring.precision):
                c, r = divmod(c, ring.p)
                digits[i * ring.ram + j] = r
        return digits

    @staticmethod
    def _vec_from_pi_digits(ring: RingDescriptor, digits: list[int]) -> tuple:
        vec = [0] * ring.ram
        for pos, digit in enumerate(digits):
            if digit:
                vec[pos % ring.ram] += digit * ring.p ** (pos // ring.ram)
        return tuple(c % ring.modulus for c in vec)

    def _downshift(self, v: int) -> "CoeffElement":
        """Exact division by pi**v; digits above the window zero fill."""
        ring = self.ring
        digits = self._pi_digits()
        assert all(d == 0 for d in digits[:v])
        shifted = digits[v:] + [0] * v
        return CoeffElement(ring, self._vec_from_pi_digits(ring, shifted))

    def _upshift(self, v: int) -> "CoeffElement":
        """Multiplication by pi**v inside the integral window."""
        ring = self.ring
        if v >= ring.window:
            return ring.zero()
        digits = [0] * v + self._pi_digits()[: ring.window - v]
        return CoeffElement(ring, self._vec_from_pi_digits(ring, digits))

    # -- laurent conversions -----------------------------------------------------

    def to_laurent(self) -> "CoeffElement":
        ring = self.ring
        if ring.kind != CHAR0:
            raise ParameterError("only char0-eka elements enter the rig window")
        if ring.laurent:
            return self
        lring = ring.fraction_field()
        if self.is_zero():
            return lring.zero()
        v = self._val_pi()
        mant = self._downshift(v)
        return CoeffElement(lring, (v, mant.data))

    def to_integral(self) -> "CoeffElement":
        ring = self.ring
        if not ring.laurent:
            return self
        iring = ring.integral_ring()
        if self.is_zero():
            return iring.zero()
        shift, mant = self.data
        if shift < 0:
            raise DomainError("negative offset cannot return to the integral ring")
        return CoeffElement(iring, mant)._upshift(shift)

    # -- ring operations -----------------------------------------------------------

    def _check_ring(self, other: "CoeffElement"):
        if self.ring != other.ring:
            raise RingMismatchError(f"rings differ: {self.ring} vs {other.ring}")

    def __add__(self, other: "CoeffElement") -> "CoeffElement":
        self._check_ring(other)
        ring = self.ring
        if ring.kind == CHAR0 and ring.laurent:
            return self._laurent_add(other)
        if ring.kind == CHAR0:
            vec = tuple((a + b) % ring.modulus for a, b in zip(self.data, other.data))
            out = CoeffElement(ring, vec)
            return self._flag_underflow(other, out)
        if ring.kind == CHARP:
            vec = tuple((a + b) % ring.p for a, b in zip(self.data, other.data))
            return CoeffElement(ring, vec)
        if ring.kind == FIELD_FP:
            return CoeffElement(ring, (self.data + other.data) % ring.p)
        return CoeffElement(ring, self.data + other.data)

    def _flag_underflow(self, other, out):
        if out.is_zero() and not self.is_zero() and not other.is_zero():
            return CoeffElement(out.ring, out.data, underflow=True)
        return out

    def _laurent_add(self, other: "CoeffElement") -> "CoeffElement":
        ring = self.ring
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        iring = ring.integral_ring()
        (sa, ma), (sb, mb) = self.data, other.data
        s = min(sa, sb)
        if sa - s >= ring.window:
            return other
        if sb - s >= ring.window:
            return self
        xa = CoeffElement(iring, ma)._upshift(sa - s)
        xb = CoeffElement(iring, mb)._upshift(sb - s)
        total = xa + xb
        if total.is_zero():
            return CoeffElement(ring, (0, (0,) * ring.ram), underflow=True)
        v = total._val_pi()
        return CoeffElement(ring, (s + v, total._downshift(v).data))

    def __neg__(self) -> "CoeffElement":
        ring = self.ring
        if ring.kind == CHAR0 and ring.laurent:
            if self.is_zero():
                return self
            shift, mant = self.data
            neg = tuple((-c) % ring.modulus for c in mant)
            return CoeffElement(ring, (shift, neg))
        if ring.kind == CHAR0:
            return CoeffElement(ring, tuple((-c) % ring.modulus for c in self.data))
        if ring.kind == CHARP:
            return CoeffElement(ring, tuple((-c) % ring.p for c in self.data))
        if ring.kind == FIELD_FP:
            return CoeffElement(ring, (-self.data) % ring.p)
        return CoeffElement(ring, -self.data)

    def __sub__(self, other: "CoeffElement") -> "CoeffElement":
        return self + (-other)

    @staticmethod
    def _vec_mul(ring: RingDescriptor, a, b) -> tuple:
        """Convolution in (Z/p^M)[x]/(x^e - p), with the carry fault hook."""
        e, mod = ring.ram, ring.modulus
        carry_image = ring.p + _CARRY_FAULT
        out = [0] * e
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                k = i + j
                term = ai * bj
                if k >= e:
                    k -= e
                    term *= carry_image
                out[k] = (out[k] + term) % mod
        return tuple(out)

    def __mul__(self, other: "CoeffElement") -> "CoeffElement":
        self._check_ring(other)
        ring = self.ring
        if ring.kind == CHAR0 and ring.laurent:
            if self.is_zero() or other.is_zero():
                return ring.zero()
            (sa, ma), (sb, mb) = self.data, other.data
            return CoeffElement(ring, (sa + sb, self._vec_mul(ring, ma, mb)))
        if ring.kind == CHAR0:
            out = CoeffElement(ring, self._vec_mul(ring, self.data, other.data))
            return self._flag_underflow(other, out)
        if ring.kind == CHARP:
            e = ring.ram
            out = [0] * e
            for i, ai in enumerate(self.data):
                if ai == 0:
                    continue
                for j, bj in enumerate(other.data):
                    if bj and i + j < e:
                        out[i + j] = (out[i + j] + ai * bj) % ring.p
            return CoeffElement(ring, tuple(out))
        if ring.kind == FIELD_FP:
            return CoeffElement(ring, (self.data * other.data) % ring.p)
        return CoeffElement(ring, self.data * other.data)

    def __pow__(self, n: int) -> "CoeffElement":
        if n < 0:
            return self.invert() ** (-n)
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale_int(self, n: int) -> "CoeffElement":
        return self * self.ring.from_int(n)

    # -- inversion ---------------------------------------------------------------

    def _newton_invert_vec(self) -> tuple:
        """Inverse of a val-0 coordinate vector, by Newton iteration."""
        ring = self.ring.integral_ring()
        vec = self.data
        y = CoeffElement(ring, (pow(vec[0] % ring.p, -1, ring.p),) + (0,) * (ring.ram - 1))
        x = CoeffElement(ring, vec)
        two = ring.from_int(2)
        for _ in range(ring.window.bit_length() + 2):
            y = y * (two - x * y)
            if (x * y) == ring.one():
                return y.data
        raise NonUnitError("element is not invertible at this precision")

    def invert(self) -> "CoeffElement":
        ring = self.ring
        if self.is_zero():
            raise ZeroDivisionError("inverting zero")
        if ring.kind == CHAR0 and ring.laurent:
            shift, mant = self.data
            inv = CoeffElement(ring.integral_ring(), mant)._newton_invert_vec()
            return CoeffElement(ring, (-shift, inv))
        if ring.kind == CHAR0:
            if self.val() != 0:
                raise NonUnitError(
                    f"val {self.val()} > 0: not a unit in the integral ring"
                )
            return CoeffElement(ring, self._newton_invert_vec())
        if ring.kind == CHARP:
            if self.val() != 0:
                raise NonUnitError("nilpotent-augmented non-units are not invertible")
            e, p = ring.ram, ring.p
            inv = [pow(self.data[0], -1, p)] + [0] * (e - 1)
            # Solve (sum a_i s^i)(sum y_i s^i) = 1 triangularly.
            for k in range(1, e):
                acc = sum(self.data[i] * inv[k - i] for i in range(1, k + 1))
                inv[k] = (-acc * inv[0]) % p
            return CoeffElement(ring, tuple(inv))
        if ring.kind == FIELD_FP:
            return CoeffElement(ring, pow(self.data, -1, ring.p))
        return CoeffElement(ring, 1 / self.data)

    # -- tower maps -----------------------------------------------------------------

    def promote(self, new_depth: int) -> "CoeffElement":
        """Canonical embedding into the depth-``new_depth`` stage."""
        ring = self.ring
        if ring.kind not in (CHAR0, CHARP):
            raise ParameterError("exact fields have no tower")
        if new_depth < ring.depth:
            raise ParameterError("promotion target must be at least the current depth")
        if new_depth == ring.depth:
            return self
        target = RingDescriptor(
            ring.kind, ring.p, ring.d, new_depth, ring.precision, ring.laurent
        )
        r = ring.d ** (new_depth - ring.depth)
        if ring.kind == CHAR0 and ring.laurent:
            shift, mant = self.data
            vec = [0] * target.ram
            for j, c in enumerate(mant):
                vec[j * r] = c
            return CoeffElement(target, (shift * r, tuple(vec)))
        vec = [0] * target.ram
        for j, c in enumerate(self.data):
            vec[j * r] = c
        return CoeffElement(target, tuple(vec))

    def mod_p(self) -> "CoeffElement":
        """Reduction into the residue avatar, pi -> s."""
        ring = self.ring
        if ring.kind != CHAR0:
            raise ParameterError("mod-p reduction starts from a char0-eka ring")
        if ring.laurent:
            if not self.is_zero() and self.data[0] < 0:
                raise DomainError("negative offsets have no mod-p image")
            return self.to_integral().mod_p()
        target = ring.residue_ring()
        return CoeffElement(target, tuple(c % ring.p for c in self.data))

    def lift(self, precision: int = 1) -> "CoeffElement":
        """Digitwise section of mod_p: s -> pi, coefficients read as integers.

        A set-theoretic section only (mod_p(lift(a)) == a); it is not a ring
        homomorphism.
        """
        ring = self.ring
        if ring.kind != CHARP:
            raise ParameterError("lifting starts from a charp-eka ring")
        target = RingDescriptor(CHAR0, ring.p, ring.d, ring.depth, precision)
        return CoeffElement(target, tuple(self.data))

    # -- serialization -----------------------------------------------------------------

    def to_json(self) -> dict:
        ring = self.ring
        if ring.kind in (FIELD_FP, FIELD_Q):
            return {"value": frac_str(self.data)}
        if self.is_zero():
            return {"offset": "0", "digits": []}
        if ring.kind == CHAR0 and ring.laurent:
            shift, mant = self.data
            digits = CoeffElement(ring.integral_ring(), mant)._pi_digits()
            while digits and digits[-1] == 0:
                digits.pop()
            return {"offset": frac_str(Fraction(shift, ring.ram)), "digits": digits}
        if ring.kind == CHAR0:
            v = self._val_pi()
            digits = self._pi_digits()[v:]
            while digits and digits[-1] == 0:
                digits.pop()
            return {"offset": frac_str(Fraction(v, ring.ram)), "digits": digits}
        v = self._val_pi()
        digits = list(self.data[v:])
        while digits and digits[-1] == 0:
            digits.pop()
        return {"offset": frac_str(Fraction(v, ring.ram)), "digits": digits}

    @classmethod
    def from_json(cls, ring: RingDescriptor, doc: dict) -> "CoeffElement":
        if not isinstance(doc, dict):
            raise SchemaError("coefficient must be an object")
        if ring.kind in (FIELD_FP, FIELD_Q):
            if "value" not in doc:
                raise SchemaError("exact-field coefficient needs a 'value'")
            return ring.from_fraction(parse_frac(str(doc["value"])))
        try:
            offset = parse_frac(str(doc["offset"]))
            digits = [int(x) for x in doc["digits"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad coefficient document {doc!r}") from exc
        if not digits:
            return ring.zero()
        shift = offset * ring.ram
        if shift.denominator != 1:
            raise SchemaError(f"offset {doc['offset']} is not a multiple of 1/{ring.ram}")
        shift = int(shift)
        if ring.kind == CHARP:
            if shift < 0:
                raise SchemaError("charp offsets are non-negative")
            vec = [0] * ring.ram
            for i, digit in enumerate(digits):
                if shift + i < ring.ram and digit % ring.p:
                    vec[shift + i] = digit % ring.p
            return cls(ring, tuple(vec))
        if ring.laurent:
            iring = ring.integral_ring()
            mant = cls._vec_from_pi_digits(iring, digits)
            el = cls(iring, mant)
            if el.is_zero():
                return ring.zero()
            if el._val_pi() != 0:
                raise SchemaError("laurent digits must start with a unit digit")
            return cls(ring, (shift, mant))
        if shift < 0:
            raise SchemaError("negative offset outside the laurent window")
        sparse = {shift + i: digit for i, digit in enumerate(digits)}
        return ring._from_pi_digits(sparse)

    def __str__(self) -> str:
        ring = self.ring
        if ring.kind in (FIELD_FP, FIELD_Q):
            return frac_str(self.data)
        if self.is_zero():
            return "0"
        if ring.kind == CHARP:
            parts = []
            for j, c in enumerate(self.data):
                if c == 0:
                    continue
                if j == 0:
                    parts.append(str(c))
                else:
                    head = "" if c == 1 else f"{c}*"
                    parts.append(f"{head}s^{j}" if j > 1 else f"{head}s")
            return " + ".join(parts)
        doc = self.to_json()
        base = 0 if self.is_zero() else Fraction(parse_frac(doc["offset"]) * ring.ram)
        parts = []
        for i, digit in enumerate(doc["digits"]):
            if digit == 0:
                continue
            j = int(base) + i
            if j == 0:
                parts.append(str(digit))
            else:
                head = "" if digit == 1 else f"{digit}*"
                parts.append(f"{head}pi^{j}" if j != 1 else f"{head}pi")
        return " + ".join(parts)


def coeff_add(a: CoeffElement, b: CoeffElement) -> CoeffElement:
    return a + b


def coeff_mul(a: CoeffElement, b: CoeffElement) -> CoeffElement:
    return a * b


def coeff_val(a: CoeffElement):
    return a.val()


def coeff_invert(a: CoeffElement) -> CoeffElement:
    return a.invert()


def coeff_promote(a: CoeffElement, new_depth: int) -> CoeffElement:
    return a.promote(new_depth)


def coeff_mod_p(a: CoeffElement) -> CoeffElement:
    return a.mod_p()
