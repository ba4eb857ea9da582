"""Functorial layer: tower extension, mod-p reduction, category comparison.

The comparison reports are finite-precision shadows of the reduction
functor between the char-0 and char-p evaluation categories:

- ``equivalence_check`` enumerates monomial evaluation towers c * p**e at a
  working depth and precision, reduces them entrywise, and tests whether
  the reduction is a bijection onto the independently enumerated char-p
  tower family.  When the residue characteristic divides the root index the
  map is wild: d-th roots of unity congruent to 1 collide (faithfulness
  fails) and some residue towers acquire roots with no lift (fullness
  fails); both kinds of witness are reported.  When p does not divide d
  every unit-root tower is rigid (tame Hensel lifting) and the check comes
  back bijective.
- ``additivity_obstruction`` searches exhaustively for a finite-support
  series g with g**d = 1 + X over the prime field.  For d a power of p the
  Frobenius solution 1 + X**(1/d) is found; otherwise the report certifies
  nonexistence below the support bound, which is why a variable cannot be
  sent to a translate a + X.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .coefficients import (
    CHAR0,
    CHARP,
    FIELD_FP,
    CoeffElement,
    RingDescriptor,
    frac_str,
    ring_make,
)
from .errors import ParameterError, ResourceLimitError
from .exponents import PADIC
from .series import RestrictedSeries, RingContext, RootTower, make_context


def eka_extend(ctx: RingContext) -> RingContext:
    """Context at the next tower depth; the embedding is coefficient promotion.

    Valuation thresholds {val >= n} are preserved by the embedding, so the
    adic topology does not change.  With d = 1 there is nothing to attach
    and the context is returned unchanged.
    """
    if ctx.coeff.kind not in (CHAR0, CHARP):
        raise ParameterError("exact-field coefficients have no tower to extend")
    if ctx.coeff.d == 1:
        return ctx
    return ctx.with_coeff(ctx.coeff.deepen(1))


def functor_mod_p(f: RestrictedSeries) -> RestrictedSeries:
    """Coefficientwise reduction pi -> s; exponents are untouched."""
    ring = f.ctx.coeff
    if ring.kind != CHAR0 or ring.laurent:
        raise ParameterError("reduction starts from the integral char0 tower")
    return f.map_coefficients(lambda c: c.mod_p(), ring.residue_ring())


@dataclass(frozen=True)
class EvalMorphism:
    """A one-variable evaluation morphism, given by its root tower."""

    source: RingContext
    tower: RootTower

    def validate(self):
        if self.source.nvars != 1:
            raise ParameterError("evaluation morphisms have one-variable sources")
        if self.source.mode != PADIC:
            raise ParameterError("evaluation morphisms live in padic mode")
        if self.tower.degree != self.source.root_base:
            raise ParameterError("tower degree must match the exponent base")
        self.tower.validate()

    def apply(self, f: RestrictedSeries):
        from .series import series_evaluate

        return series_evaluate(f, [self.tower])


def morphism_reduce(m: EvalMorphism) -> EvalMorphism:
    """Image of an evaluation morphism under the mod-p functor."""
    m.validate()
    src_ring = m.source.coeff
    if src_ring.kind != CHAR0 or src_ring.laurent:
        raise ParameterError("only char0 morphisms reduce")
    reduced_tower = m.tower.map(lambda b: b.mod_p())
    reduced_source = m.source.with_coeff(src_ring.residue_ring())
    out = EvalMorphism(reduced_source, reduced_tower)
    out.validate()
    return out


def tower_lift(tower: RootTower, precision: int) -> RootTower:
    """Section of tower reduction: the deepest entry lifts digitwise and the
    rest are recovered by powering, so compatibility holds by construction."""
    top = tower.entries[-1].lift(precision)
    entries = [top]
    for _ in range(tower.depth):
        entries.append(entries[-1] ** tower.degree)
    entries.reverse()
    return RootTower(tower.degree, tuple(entries))


# ---------------------------------------------------------------------------
# equivalence of the evaluation categories on the monomial family
# ---------------------------------------------------------------------------


def _unit_roots(c: int, d: int, modulus: int, p: int) -> list[int]:
    """All units u mod ``modulus`` with u**d == c."""
    c %= modulus
    return [
        u for u in range(1, modulus) if u % p != 0 and pow(u, d, modulus) == c
    ]


def _tower_json(entries) -> list:
    return [b.to_json() for b in entries]


def equivalence_check(p: int, d: int, depth: int, bound: int, precision: int = 4) -> dict:
    """Compare the monomial tower families on both sides of mod p.

    The char-0 family consists of the zero tower and all compatible chains
    (b_0, ..., b_D) with b_0 = c * p**e, c in {1..p-1},
    e in (1/d**depth)Z, 0 <= e < bound, materialized at working depth
    ``depth + D`` and precision ``precision``; D is the smallest depth with
    bound <= d**D, so nonzero towers stay visible after reduction.  The
    char-p family is enumerated independently.  The report records
    injectivity collisions, unliftable residue towers, and whether the
    outcome matches the tame expectation (bijective iff p does not
    divide d).
    """
    if bound < 1:
        raise ParameterError("the exponent bound must be >= 1")
    if d < 2:
        raise ParameterError("the comparison needs a root index d >= 2")
    chain = 1
    while d**chain < bound:
        chain += 1
    work = depth + chain
    ring0 = ring_make(CHAR0, p, d, work, precision)
    ringp = ring0.residue_ring()
    modulus = ring0.modulus

    # char-0 towers, deduplicated by value tuple
    towers0 = {(ring0.zero(),) * (chain + 1)}
    non_extendable = []
    for c in range(1, p):
        for a in range(bound * d**depth):
            # b_0 = c * p**(a / d**depth) = c * pi**(a * d**chain)
            chains = [[ring0.from_int(c) * ring0.pi_power(a * d**chain)]]
            units = [[c]]
            dead = False
            for step in range(1, chain + 1):
                new_chains, new_units = [], []
                for us, ch in zip(units, chains):
                    for u in _unit_roots(us[-1], d, modulus, p):
                        new_units.append(us + [u])
                        new_chains.append(
                            ch + [ring0.from_int(u) * ring0.pi_power(a * d ** (chain - step))]
                        )
                if not new_chains:
                    dead = True
                    break
                chains, units = new_chains, new_units
            if dead:
                non_extendable.append({"c": c, "e": frac_str(Fraction(a, d**depth))})
                continue
            for ch in chains:
                towers0.add(tuple(ch))

    # reduce
    image = {}
    collisions = []
    for tower in sorted(towers0, key=_tower_key):
        reduced = tuple(b.mod_p() for b in tower)
        if reduced in image:
            collisions.append(
                {
                    "first": _tower_json(image[reduced]),
                    "second": _tower_json(tower),
                    "reduced": _tower_json(reduced),
                }
            )
        else:
            image[reduced] = tower
    injective = not collisions

    # independent char-p family
    towersp = {(ringp.zero(),) * (chain + 1)}
    for c in range(1, p):
        for a in range(bound * d**depth):
            chains = [[ringp.from_int(c) * ringp.pi_power(a * d**chain)]]
            for step in range(1, chain + 1):
                new_chains = []
                for ch in chains:
                    for w in range(1, p):
                        cand = ringp.from_int(w) * ringp.pi_power(a * d ** (chain - step))
                        if cand**d == ch[-1]:
                            new_chains.append(ch + [cand])
                chains = new_chains
            for ch in chains:
                towersp.add(tuple(ch))

    missed = [t for t in sorted(towersp, key=_tower_key) if t not in image]
    surjective = not missed

    expected = d % p != 0
    if expected:
        ok = injective and surjective
    else:
        ok = bool(collisions) or bool(missed)
    return {
        "p": p,
        "d": d,
        "K": depth,
        "N": bound,
        "M": precision,
        "chain_depth": chain,
        "family_size": len(towers0),
        "reduced_family_size": len(image),
        "target_family_size": len(towersp),
        "non_extendable": non_extendable,
        "injective": injective,
        "collisions": collisions,
        "surjective": surjective,
        "missing_lifts": [_tower_json(t) for t in missed],
        "expected_bijective": expected,
        "pass": ok,
    }


def _tower_key(tower) -> tuple:
    return tuple(sorted(b.to_json().items()) for b in tower)


def additivity_obstruction(
    p: int,
    d: int,
    depth: int = 3,
    support_bound: int = 6,
    ceiling: int = 2_000_000,
) -> dict:
    """Exhaustive search for g with g**d = 1 + X over the prime field.

    Candidate exponents are the lattice points of (1/d**depth)Z in
    [0, 1/d]; anything larger cannot appear since the top term of g squares
    to the top term of 1 + X.
    """
    if depth < 1:
        raise ParameterError("the search needs depth >= 1 to see 1/d")
    field = ring_make(FIELD_FP, p)
    ctx = make_context(field, ("X",), PADIC, root_base=d)
    exponents = [Fraction(a, d**depth) for a in range(d ** (depth - 1) + 1)]
    total = p ** len(exponents)
    if total > ceiling:
        raise ResourceLimitError(
            f"{total} candidate assignments exceed the ceiling {ceiling}"
        )
    target = RestrictedSeries.one(ctx) + RestrictedSeries.variable(ctx, 0, 1)

    witness = None
    checked = 0
    for coeffs in itertools.product(range(p), repeat=len(exponents)):
        support = sum(1 for c in coeffs if c)
        if support == 0 or support > support_bound:
            continue
        checked += 1
        g = RestrictedSeries(
            ctx,
            {
                ctx.mexp([e]): field.from_int(c)
                for e, c in zip(exponents, coeffs)
                if c
            },
        )
        if g**d == target:
            witness = g
            break

    frobenius = None
    if witness is not None:
        frob = RestrictedSeries.one(ctx) + RestrictedSeries.variable(
            ctx, 0, Fraction(1, d)
        )
        frobenius = witness == frob
    return {
        "p": p,
        "d": d,
        "K": depth,
        "support_bound": support_bound,
        "found": witness is not None,
        "witness": witness.to_json() if witness is not None else None,
        "frobenius_solution": frobenius,
        "candidates_checked": checked,
    }


# ---------------------------------------------------------------------------
# rig window and Rees graded pieces
# ---------------------------------------------------------------------------


def rig_extend(f: RestrictedSeries) -> RestrictedSeries:
    """Same series viewed with fraction-field coefficients."""
    ring = f.ctx.coeff
    if ring.kind != CHAR0:
        raise ParameterError("the rig window inverts the char0 uniformizer")
    if ring.laurent:
        return f
    return f.map_coefficients(lambda c: c.to_laurent(), ring.fraction_field())


def rig_divide(f: RestrictedSeries, s: CoeffElement) -> RestrictedSeries:
    """Scalar division inside the rig window."""
    g = rig_extend(f)
    scalar = s if s.ring.laurent else s.to_laurent()
    return g.scale(scalar.invert())


@dataclass(frozen=True)
class GradedPiece:
    """One graded piece of the (eka) Rees algebra, generated by a**index."""

    index: Fraction
    generator: CoeffElement

    def to_json(self) -> dict:
        return {
            "index": frac_str(self.index),
            "generator": self.generator.to_json(),
            "val": frac_str(self.generator.val())
            if not self.generator.is_zero()
            else "inf",
        }


def rees_pieces(
    ring: RingDescriptor, mode: str, n_max: int, root_depth: int = 0
) -> dict:
    """Graded pieces a**n (classical) plus a**(1/d**n) (eka mode).

    ``a`` is the image of the ideal-of-definition generator p.  In char p
    the classical pieces vanish while the fractional ones survive, which is
    the point of the fractional filtration.  The integer-index filtration is
    a-stable: generator(n) * a == generator(n + 1).
    """
    if ring.kind not in (CHAR0, CHARP):
        raise ParameterError("Rees pieces need a tower coefficient ring")
    if ring.laurent:
        raise ParameterError("Rees pieces live in the integral model")
    if mode not in ("classical", "eka"):
        raise ParameterError(f"unknown Rees mode {mode!r}")
    if n_max < 0 or root_depth < 0:
        raise ParameterError("piece counts must be >= 0")
    if mode == "eka" and root_depth > ring.depth:
        raise ParameterError(
            f"root depth {root_depth} exceeds the ring depth {ring.depth}"
        )

    a = ring.pi_power(ring.ram)
    pieces = []
    for n in range(n_max + 1):
        pieces.append(GradedPiece(Fraction(n), a**n))
    if mode == "eka":
        for n in range(1, root_depth + 1):
            gen = ring.pi_power(ring.ram // ring.d**n)
            pieces.append(GradedPiece(Fraction(1, ring.d**n), gen))
    pieces.sort(key=lambda piece: piece.index)

    stable = all(
        a ** n * a == a ** (n + 1) for n in range(n_max)
    )
    return {
        "mode": mode,
        "n_max": n_max,
        "root_depth": root_depth if mode == "eka" else 0,
        "ring": ring.to_json(),
        "pieces": [piece.to_json() for piece in pieces],
        "stable": stable,
    }
