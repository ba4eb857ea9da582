"""Sparse restricted power series with rational-degree exponents.

A :class:`RestrictedSeries` is a finite map from multi-exponents to nonzero
coefficients inside a :class:`RingContext`.  Finite support is the working
model of the convergence condition on coefficients: at precision M every
admissible series agrees with a finite one, so no operation ever needs an
infinite tail.

The per-series ``level`` records the largest root depth in use and only
grows; substitution X -> X**(1/b**i) raises it by i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coefficients import (
    CHAR0,
    CHARP,
    INFINITY,
    CoeffElement,
    RingDescriptor,
    frac_str,
)
from .errors import (
    DomainError,
    ModeMismatchError,
    ParameterError,
    RingMismatchError,
    SchemaError,
    TowerError,
    UnsupportedError,
)
from .exponents import PADIC, RATIONAL, Exponent, MultiExponent


@dataclass(frozen=True)
class RingContext:
    """Ambient data of a series ring: coefficients, variables, exponent mode.

    ``root_base`` is the base of the exponent lattice in padic mode.  It is
    usually the coefficient prime (variables with p-power roots) but the
    functorial layer also builds contexts whose variables carry d-power
    roots over the same tower.
    """

    coeff: RingDescriptor
    names: tuple[str, ...]
    mode: str = PADIC
    root_base: int = 0

    def __post_init__(self):
        if self.mode not in (PADIC, RATIONAL):
            raise ParameterError(f"unknown exponent mode {self.mode!r}")
        if self.mode == PADIC and self.root_base < 2:
            raise ParameterError("padic contexts need a root base >= 2")
        if self.mode == RATIONAL and self.root_base != 0:
            raise ParameterError("rational contexts carry no root base")
        if len(set(self.names)) != len(self.names):
            raise ParameterError("variable names must be distinct")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def exponent(self, value) -> Exponent:
        return Exponent(Fraction(value), self.mode, self.root_base)

    def mexp(self, values) -> MultiExponent:
        values = tuple(values)
        if len(values) != self.nvars:
            raise ParameterError(f"expected {self.nvars} exponents, got {len(values)}")
        return MultiExponent.make(values, self.mode, self.root_base)

    def extend(self, extra_names) -> "RingContext":
        return RingContext(
            self.coeff, self.names + tuple(extra_names), self.mode, self.root_base
        )

    def with_coeff(self, coeff: RingDescriptor) -> "RingContext":
        return RingContext(coeff, self.names, self.mode, self.root_base)

    def to_json(self, level: int = 0) -> dict:
        return {
            "coeff": self.coeff.to_json(),
            "vars": list(self.names),
            "mode": self.mode,
            "base": self.root_base,
            "level": level,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RingContext":
        try:
            return cls(
                RingDescriptor.from_json(doc["coeff"]),
                tuple(str(v) for v in doc["vars"]),
                str(doc.get("mode", PADIC)),
                int(doc.get("base", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad ring context {doc!r}") from exc

    def __str__(self) -> str:
        vars_s = ",".join(self.names)
        return f"{self.coeff}<{vars_s}>[{self.mode}]"


def make_context(
    coeff: RingDescriptor, names, mode: str = PADIC, root_base: int | None = None
) -> RingContext:
    if root_base is None:
        root_base = coeff.p if mode == PADIC else 0
    return RingContext(coeff, tuple(names), mode, root_base)


class RestrictedSeries:
    """Finite sparse series; immutable once constructed."""

    __slots__ = ("ctx", "terms", "level")

    def __init__(self, ctx: RingContext, terms=None, level: int = 0):
        self.ctx = ctx
        clean: dict[MultiExponent, CoeffElement] = {}
        for mexp, coeff in dict(terms or {}).items():
            if coeff.ring != ctx.coeff:
                raise RingMismatchError("coefficient outside the context ring")
            if len(mexp) != ctx.nvars:
                raise ParameterError("exponent length does not match variable count")
            for e in mexp.entries:
                if e.mode != ctx.mode or e.base != ctx.root_base:
                    raise ModeMismatchError("exponent mode differs from the context")
            if not coeff.is_zero():
                clean[mexp] = coeff
        self.terms = clean
        self.level = max(level, self._support_scale())

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, ctx: RingContext) -> "RestrictedSeries":
        return cls(ctx, {})

    @classmethod
    def constant(cls, ctx: RingContext, coeff: CoeffElement) -> "RestrictedSeries":
        return cls(ctx, {ctx.mexp((0,) * ctx.nvars): coeff})

    @classmethod
    def one(cls, ctx: RingContext) -> "RestrictedSeries":
        return cls.constant(ctx, ctx.coeff.one())

    @classmethod
    def monomial(
        cls, ctx: RingContext, exponents, coeff: CoeffElement | None = None
    ) -> "RestrictedSeries":
        if coeff is None:
            coeff = ctx.coeff.one()
        return cls(ctx, {ctx.mexp(exponents): coeff})

    @classmethod
    def variable(cls, ctx: RingContext, j: int, power=1) -> "RestrictedSeries":
        values = [Fraction(0)] * ctx.nvars
        values[j] = Fraction(power)
        return cls.monomial(ctx, values)

    # -- bookkeeping -------------------------------------------------------------

    def _support_scale(self) -> int:
        if self.ctx.mode == PADIC:
            return max((m.max_scale() for m in self.terms), default=0)
        return max(
            (e.denominator for m in self.terms for e in m.entries), default=1
        )

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[MultiExponent, CoeffElement]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def _check_ctx(self, other: "RestrictedSeries"):
        if self.ctx != other.ctx:
            raise RingMismatchError(f"contexts differ: {self.ctx} vs {other.ctx}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RestrictedSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    # -- arithmetic ------------------------------------------------------------------

    def __add__(self, other: "RestrictedSeries") -> "RestrictedSeries":
        self._check_ctx(other)
        out = dict(self.terms)
        for mexp, coeff in other.terms.items():
            if mexp in out:
                out[mexp] = out[mexp] + coeff
            else:
                out[mexp] = coeff
        return RestrictedSeries(self.ctx, out, max(self.level, other.level))

    def __neg__(self) -> "RestrictedSeries":
        return RestrictedSeries(
            self.ctx, {m: -c for m, c in self.terms.items()}, self.level
        )

    def __sub__(self, other: "RestrictedSeries") -> "RestrictedSeries":
        return self + (-other)

    def __mul__(self, other: "RestrictedSeries") -> "RestrictedSeries":
        self._check_ctx(other)
        out: dict[MultiExponent, CoeffElement] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                key = ma + mb
                prod = ca * cb
                if key in out:
                    out[key] = out[key] + prod
                else:
                    out[key] = prod
        return RestrictedSeries(self.ctx, out, max(self.level, other.level))

    def __pow__(self, n: int) -> "RestrictedSeries":
        if n < 0:
            raise DomainError("series have no negative powers")
        out = RestrictedSeries.one(self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, coeff: CoeffElement) -> "RestrictedSeries":
        if coeff.ring != self.ctx.coeff:
            raise RingMismatchError("scalar outside the coefficient ring")
        return RestrictedSeries(
            self.ctx, {m: c * coeff for m, c in self.terms.items()}, self.level
        )

    # -- valuations and shifts ----------------------------------------------------------

    def gauss_val(self):
        """Minimum coefficient valuation; +inf for the zero series."""
        if not self.terms:
            return INFINITY
        return min(c.val() for c in self.terms.values())

    def truncate_val(self, cutoff: Fraction) -> "RestrictedSeries":
        """Display helper: drop terms whose coefficient val reaches cutoff."""
        kept = {m: c for m, c in self.terms.items() if c.val() < cutoff}
        return RestrictedSeries(self.ctx, kept, self.level)

    def root_shift(self, i: int) -> "RestrictedSeries":
        """Substitute every variable X by X**(1/base**i)."""
        if self.ctx.mode != PADIC:
            raise ModeMismatchError("root substitution is defined levelwise only")
        if i < 0:
            raise ParameterError("shift depth must be >= 0")
        shifted = {m.scale_root(i): c for m, c in self.terms.items()}
        return RestrictedSeries(self.ctx, shifted, self.level + i)

    # -- coefficient functors ---------------------------------------------------------------

    def map_coefficients(self, fn, new_coeff: RingDescriptor) -> "RestrictedSeries":
        out = {m: fn(c) for m, c in self.terms.items()}
        return RestrictedSeries(self.ctx.with_coeff(new_coeff), out, self.level)

    def promote_coeff(self, new_depth: int) -> "RestrictedSeries":
        target = RingDescriptor(
            self.ctx.coeff.kind,
            self.ctx.coeff.p,
            self.ctx.coeff.d,
            new_depth,
            self.ctx.coeff.precision,
            self.ctx.coeff.laurent,
        )
        return self.map_coefficients(lambda c: c.promote(new_depth), target)

    def embed(self, target_ctx: RingContext) -> "RestrictedSeries":
        """Re-context into a ring with extra trailing variables."""
        if target_ctx.names[: self.ctx.nvars] != self.ctx.names:
            raise ParameterError("target context must extend the current variables")
        if target_ctx.coeff != self.ctx.coeff:
            raise RingMismatchError("embedding does not change coefficients")
        pad = target_ctx.nvars - self.ctx.nvars
        zero = Exponent(Fraction(0), self.ctx.mode, self.ctx.root_base)
        out = {
            MultiExponent(m.entries + (zero,) * pad): c
            for m, c in self.terms.items()
        }
        return RestrictedSeries(target_ctx, out, self.level)

    # -- serialization --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ctx": self.ctx.to_json(self.level),
            "terms": [
                {"exp": m.to_json(), "coeff": c.to_json()}
                for m, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RestrictedSeries":
        if not isinstance(doc, dict) or "ctx" not in doc or "terms" not in doc:
            raise SchemaError("series document needs 'ctx' and 'terms'")
        ctx = RingContext.from_json(doc["ctx"])
        level = int(doc["ctx"].get("level", 0))
        terms = {}
        for item in doc["terms"]:
            try:
                mexp = MultiExponent.from_json(item["exp"], ctx.mode, ctx.root_base)
                coeff = CoeffElement.from_json(ctx.coeff, item["coeff"])
            except (KeyError, TypeError) as exc:
                raise SchemaError(f"bad term {item!r}") from exc
            terms[mexp] = coeff
        return cls(ctx, terms, level)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mexp, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.ctx.names, mexp.entries):
                if e.is_zero():
                    continue
                if e.value == 1:
                    factors.append(name)
                else:
                    factors.append(f"{name}^({e})")
            cs = str(coeff)
            if not factors:
                parts.append(f"({cs})" if " " in cs else cs)
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                parts.append(f"({cs})*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"RestrictedSeries({self})"


@dataclass(frozen=True)
class RootTower:
    """Compatible root data b_0, b_1, ... with b_{i+1}**degree == b_i.

    Entries are coefficient elements (evaluation into the coefficient ring)
    or series (evaluation endomorphisms); all entries live in one ring.
    """

    degree: int
    entries: tuple

    def __post_init__(self):
        if self.degree < 1:
            raise ParameterError("tower degree must be >= 1")
        if not self.entries:
            raise ParameterError("towers need at least one entry")

    @property
    def depth(self) -> int:
        return len(self.entries) - 1

    def validate(self):
        for i in range(self.depth):
            if self.entries[i + 1] ** self.degree != self.entries[i]:
                raise TowerError(
                    f"tower compatibility fails at stage {i + 1}", stage=i + 1
                )

    def map(self, fn) -> "RootTower":
        return RootTower(self.degree, tuple(fn(b) for b in self.entries))

    def to_json(self) -> dict:
        return {"degree": self.degree, "entries": [b.to_json() for b in self.entries]}


def _coeff_into(coeff: CoeffElement, target: RingDescriptor) -> CoeffElement:
    """Map a coefficient into the (possibly deeper) target ring."""
    src = coeff.ring
    if src == target:
        return coeff
    if (
        src.kind == target.kind
        and src.p == target.p
        and src.d == target.d
        and src.precision == target.precision
        and src.laurent == target.laurent
        and target.depth >= src.depth
    ):
        return coeff.promote(target.depth)
    raise RingMismatchError(f"no canonical map {src} -> {target}")


def series_evaluate(f: RestrictedSeries, towers) -> object:
    """Evaluation homomorphism determined by one root tower per variable.

    Substitutes X_j**(m/b**i) -> towers[j].entries[i]**m and sums.  The
    result is a coefficient element or a series, following the towers.
    """
    ctx = f.ctx
    if ctx.mode != PADIC:
        raise UnsupportedError("evaluation towers are indexed by root level")
    towers = list(towers)
    if len(towers) != ctx.nvars:
        raise ParameterError(f"need {ctx.nvars} towers, got {len(towers)}")
    for t in towers:
        if t.degree != ctx.root_base:
            raise TowerError(
                f"tower degree {t.degree} differs from the exponent base "
                f"{ctx.root_base}"
            )
        t.validate()

    sample = towers[0].entries[0] if towers else None
    into_series = isinstance(sample, RestrictedSeries)
    if into_series:
        target_ctx = sample.ctx
        zero = RestrictedSeries.zero(target_ctx)

        def lift(c):
            return RestrictedSeries.constant(
                target_ctx, _coeff_into(c, target_ctx.coeff)
            )

    else:
        target_ring = sample.ring if sample is not None else ctx.coeff
        zero = target_ring.zero()

        def lift(c):
            return _coeff_into(c, target_ring)

    acc = zero
    for mexp, coeff in f.sorted_terms():
        prod = lift(coeff)
        for j, e in enumerate(mexp.entries):
            if e.is_zero():
                continue
            i, m = e.scale, e.numerator
            if i > towers[j].depth:
                raise TowerError(
                    f"series level {i} exceeds tower depth {towers[j].depth} "
                    f"for variable {ctx.names[j]}",
                    stage=i,
                )
            prod = prod * towers[j].entries[i] ** m
        acc = acc + prod
    return acc


def finite_presentation_at_level(gens) -> int:
    """Smallest level i that contains every generator.

    The certificate bounds both the exponent denominators (variable roots)
    and the coefficient valuation denominators (tower roots), so all the
    generators live in the level-i Noetherian stage.
    """
    gens = list(gens)
    if not gens:
        return 0
    level = 0
    for g in gens:
        if g.ctx.mode != PADIC:
            raise UnsupportedError("level certificates are defined in padic mode")
        d = g.ctx.coeff.d if g.ctx.coeff.kind in (CHAR0, CHARP) else 1
        for mexp, coeff in g.terms.items():
            level = max(level, mexp.max_scale())
            v = coeff.val()
            if v is INFINITY or v == 0 or d == 1:
                continue
            i = 0
            while (Fraction(v) * d**i).denominator != 1:
                i += 1
            level = max(level, i)
    return level


def eisenstein_at_pi(f: RestrictedSeries, i_max: int) -> list[dict]:
    """Per-level Eisenstein reports for a distinguished one-variable polynomial.

    At each level the criterion demands a unit leading coefficient, strictly
    positive valuation on every other coefficient, and constant-term
    valuation exactly 1/d**K, the smallest positive value of the depth-K
    value group.  Passing certifies irreducibility at that level; failing
    certifies nothing (the check is sufficient only).
    """
    ctx = f.ctx
    if ctx.nvars != 1:
        raise UnsupportedError("the criterion applies to one-variable polynomials")
    if ctx.mode != PADIC:
        raise ModeMismatchError("levelwise criterion needs padic exponents")
    if ctx.coeff.kind != CHAR0 or ctx.coeff.laurent:
        raise DomainError("coefficients must come from the integral char0 tower")
    if f.is_zero():
        raise DomainError("the zero series is not a distinguished polynomial")
    if i_max < 0:
        raise ParameterError("i_max must be >= 0")

    lead_exp = max(m.entries[0].value for m in f.terms)
    lead = next(c for m, c in f.terms.items() if m.entries[0].value == lead_exp)
    if lead.val() != 0:
        raise DomainError("leading coefficient is not a unit; cannot normalize")
    monic = f.scale(lead.invert())

    min_positive = Fraction(1, ctx.coeff.ram)
    reports = []
    for i in range(i_max + 1):
        shifted = monic.root_shift(i)
        top = max(m.entries[0].value for m in shifted.terms)
        const = None
        positive = True
        for mexp, coeff in shifted.terms.items():
            v = mexp.entries[0].value
            if v == top:
                continue
            if coeff.val() <= 0:
                positive = False
            if v == 0:
                const = coeff
        const_val = const.val() if const is not None else INFINITY
        ok = positive and const is not None and const_val == min_positive
        reports.append(
            {
                "i": i,
                "eisenstein": bool(ok),
                "constant_val": frac_str(const_val) if const is not None else "inf",
                "min_positive": frac_str(min_positive),
            }
        )
    return reports
