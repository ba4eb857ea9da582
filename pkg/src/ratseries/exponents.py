"""Exact exponent arithmetic for monomials of rational degree.

An :class:`Exponent` is a non-negative element of Z[1/b] for a fixed root
base ``b`` (mode ``"padic"``) or of Q (mode ``"rational"``).  Padic-mode
values are kept as reduced fractions whose denominator is a power of the
base, which makes the numerator/scale representation unique; rational-mode
values are plain reduced fractions.

A :class:`MultiExponent` is a fixed-length vector of exponents sharing one
mode and base, totally ordered by rational total degree with a lexicographic
tie-break (leftmost entry most significant).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ModeMismatchError, ParameterError, SchemaError, ShapeMismatchError

PADIC = "padic"
RATIONAL = "rational"


def _base_power_scale(den: int, base: int) -> int:
    """Return k with den == base**k, or raise if den is not a base power."""
    k = 0
    while den % base == 0:
        den //= base
        k += 1
    if den != 1:
        raise ParameterError(f"denominator is not a power of {base}")
    return k


@dataclass(frozen=True, order=False)
class Exponent:
    """One normalized exponent.  ``base`` is 0 in rational mode."""

    value: Fraction
    mode: str
    base: int = 0

    def __post_init__(self):
        if self.mode not in (PADIC, RATIONAL):
            raise ParameterError(f"unknown exponent mode {self.mode!r}")
        if self.value < 0:
            raise ParameterError("exponents must be non-negative")
        if self.mode == PADIC:
            if self.base < 2:
                raise ParameterError("padic mode needs a base >= 2")
            _base_power_scale(self.value.denominator, self.base)
        elif self.base != 0:
            raise ParameterError("rational mode carries no base")

    @classmethod
    def padic(cls, num: int, scale: int, base: int) -> "Exponent":
        """Normalized representative of num / base**scale."""
        if num < 0 or scale < 0:
            raise ParameterError("padic exponents need num >= 0, scale >= 0")
        if base < 2:
            raise ParameterError("padic mode needs a base >= 2")
        return cls(Fraction(num, base**scale), PADIC, base)

    @classmethod
    def rational(cls, num: int, den: int = 1) -> "Exponent":
        return cls(Fraction(num, den), RATIONAL, 0)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def scale(self) -> int:
        """Denominator exponent: k with value = num / base**k (padic mode)."""
        if self.mode == PADIC:
            return _base_power_scale(self.value.denominator, self.base)
        return 0

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def is_zero(self) -> bool:
        return self.value == 0

    def _check_compatible(self, other: "Exponent"):
        if self.mode != other.mode or self.base != other.base:
            raise ModeMismatchError(
                f"incompatible exponents: {self.mode}/{self.base} vs "
                f"{other.mode}/{other.base}"
            )

    def __add__(self, other: "Exponent") -> "Exponent":
        self._check_compatible(other)
        return Exponent(self.value + other.value, self.mode, self.base)

    def scale_root(self, i: int) -> "Exponent":
        """Divide by base**i, the exponent shadow of X -> X**(1/base**i)."""
        if self.mode != PADIC:
            raise ModeMismatchError("root scaling is defined levelwise only")
        if i < 0:
            raise ParameterError("root scaling depth must be >= 0")
        return Exponent(self.value / self.base**i, self.mode, self.base)

    def __lt__(self, other: "Exponent") -> bool:
        self._check_compatible(other)
        return self.value < other.value

    def __le__(self, other: "Exponent") -> bool:
        self._check_compatible(other)
        return self.value <= other.value

    def __str__(self) -> str:
        if self.mode == PADIC:
            k = self.scale
            if k == 0:
                return str(self.numerator)
            return f"{self.numerator}/{self.base}^{k}"
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"

    @classmethod
    def parse(cls, text: str, mode: str, base: int = 0) -> "Exponent":
        """Inverse of ``str``; round-trips bit-exactly."""
        text = text.strip()
        try:
            if mode == PADIC:
                if "/" in text:
                    num_s, rest = text.split("/", 1)
                    b_s, _, k_s = rest.partition("^")
                    if int(b_s) != base:
                        raise SchemaError(f"exponent base {b_s} != ring base {base}")
                    return cls.padic(int(num_s), int(k_s) if k_s else 1, base)
                return cls.padic(int(text), 0, base)
            if "/" in text:
                num_s, den_s = text.split("/", 1)
                return cls.rational(int(num_s), int(den_s))
            return cls.rational(int(text))
        except ValueError as exc:
            raise SchemaError(f"bad exponent literal {text!r}") from exc

    def to_json(self) -> list:
        """Pair-of-strings form used inside series documents."""
        if self.mode == PADIC:
            return [str(self.numerator), str(self.scale)]
        return [str(self.value.numerator), str(self.value.denominator)]

    @classmethod
    def from_json(cls, pair, mode: str, base: int = 0) -> "Exponent":
        try:
            a, b = int(pair[0]), int(pair[1])
        except (TypeError, ValueError, IndexError) as exc:
            raise SchemaError(f"bad exponent pair {pair!r}") from exc
        if mode == PADIC:
            return cls.padic(a, b, base)
        return cls.rational(a, b)


def exp_normalize(raw_num: int, raw_scale: int, base: int) -> Exponent:
    """Unique normalized representative of raw_num / base**raw_scale."""
    return Exponent.padic(raw_num, raw_scale, base)


@dataclass(frozen=True, order=False)
class MultiExponent:
    """Vector of exponents for the variables of an ambient ring."""

    entries: tuple[Exponent, ...]

    def __post_init__(self):
        modes = {(e.mode, e.base) for e in self.entries}
        if len(modes) > 1:
            raise ModeMismatchError("mixed modes inside one multi-exponent")

    @classmethod
    def make(cls, values, mode: str, base: int = 0) -> "MultiExponent":
        """Build from raw Fraction/int values."""
        return cls(tuple(Exponent(Fraction(v), mode, base) for v in values))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Exponent:
        return self.entries[i]

    def total_degree(self) -> Fraction:
        return sum((e.value for e in self.entries), Fraction(0))

    def _values(self) -> tuple[Fraction, ...]:
        return tuple(e.value for e in self.entries)

    def _check_shape(self, other: "MultiExponent"):
        if len(self) != len(other):
            raise ShapeMismatchError(
                f"multi-exponent lengths differ: {len(self)} vs {len(other)}"
            )

    def sort_key(self) -> tuple:
        return (self.total_degree(), self._values())

    def cmp(self, other: "MultiExponent") -> int:
        """Total order: degree ascending, then lex (first entry heaviest)."""
        self._check_shape(other)
        a, b = self.sort_key(), other.sort_key()
        return (a > b) - (a < b)

    def __lt__(self, other: "MultiExponent") -> bool:
        return self.cmp(other) < 0

    def __le__(self, other: "MultiExponent") -> bool:
        return self.cmp(other) <= 0

    def __add__(self, other: "MultiExponent") -> "MultiExponent":
        self._check_shape(other)
        return MultiExponent(
            tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def divides(self, other: "MultiExponent") -> bool:
        """Entrywise <=, i.e. the monomial divides ``other``."""
        self._check_shape(other)
        return all(a.value <= b.value for a, b in zip(self.entries, other.entries))

    def scale_root(self, i: int) -> "MultiExponent":
        return MultiExponent(tuple(e.scale_root(i) for e in self.entries))

    def max_scale(self) -> int:
        return max((e.scale for e in self.entries), default=0)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]

    @classmethod
    def from_json(cls, pairs, mode: str, base: int = 0) -> "MultiExponent":
        return cls(tuple(Exponent.from_json(p, mode, base) for p in pairs))

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def mexp_cmp(a: MultiExponent, b: MultiExponent) -> int:
    return a.cmp(b)


def monomial_ideal_member(gens: list[MultiExponent], t: MultiExponent) -> bool:
    """Monomial divisibility in the rational exponent lattice.

    True iff some generator divides ``t`` entrywise.
    """
    if not gens:
        raise ParameterError("membership needs at least one generator")
    return any(g.divides(t) for g in gens)


def monomial_ideal_member_bruteforce(
    gens: list[MultiExponent], t: MultiExponent, scale_bound: int, degree_bound: int
) -> bool:
    """Independent oracle: search for an explicit cofactor c with g + c == t.

    Enumerates cofactors over the bounded lattice (denominator scale up to
    ``scale_bound``, numerators up to ``degree_bound`` per entry).  Only used
    by tests; exponential in the number of variables.
    """
    if not gens:
        raise ParameterError("membership needs at least one generator")
    n = len(t)
    mode = t.entries[0].mode if n else PADIC
    base = t.entries[0].base if n else 2
    if mode == PADIC:
        den = base**scale_bound
    else:
        den = scale_bound
    choices = [Fraction(k, den) for k in range(degree_bound * den + 1)]
    for g in gens:
        for combo in itertools.product(choices, repeat=n):
            cand = tuple(gv + cv for gv, cv in zip(g._values(), combo))
            if cand == t._values():
                return True
    return False
