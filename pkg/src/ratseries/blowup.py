"""Chart presentations of admissible formal blow-ups.

``blowup_charts`` produces, for generators f_0..f_r of an open ideal, the
r+1 charts C_i = A<xi_j> / (f_i xi_j - f_j).  Saturation (killing the
f_i-torsion, which equals the ideal-of-definition torsion) is implemented
for monomial data only: single-term relations and single-term generators
with unit coefficients.  There the torsion calculus is a bounded monomial
rewriting game:

- substitution moves replace a factor f_j by f_i xi_j (and back) inside any
  known monomial member of the ideal;
- whenever f_i * g is a member but g is not, g is f_i-torsion and becomes a
  witness, and the ideal grows by g.

Everything is bounded by a configurable total-degree cutoff; the raw
(unsaturated) presentation is always available for inputs the rewriting
does not cover.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .coefficients import CoeffElement, frac_str
from .errors import ParameterError, UnsupportedError
from .exponents import MultiExponent, monomial_ideal_member
from .series import RestrictedSeries, RingContext

RAW = "raw"
SATURATED = "saturated-monomial"
UNSUPPORTED = "saturation-unsupported"


@dataclass(frozen=True)
class AlgebraPresentation:
    """Ambient algebra: a context plus finitely many cut-out relations."""

    ctx: RingContext
    relations: tuple[RestrictedSeries, ...] = ()
    label: str = "A"

    def __post_init__(self):
        for rel in self.relations:
            if rel.ctx != self.ctx:
                raise ParameterError("relations must live in the ambient context")

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "ctx": self.ctx.to_json(),
            "relations": [r.to_json() for r in self.relations],
        }


@dataclass(frozen=True)
class ChartPresentation:
    """One blow-up chart C_i = A<xi_j> / (f_i xi_j - f_j)."""

    index: int
    ctx: RingContext
    relations: tuple[RestrictedSeries, ...]
    gens: tuple[RestrictedSeries, ...]
    ambient_nvars: int
    new_vars: tuple[str, ...]
    status: str = RAW
    witnesses: tuple[RestrictedSeries, ...] = ()
    bound: Fraction | None = None

    def xi_position(self, j: int) -> int:
        """Variable slot of xi_j (j != index)."""
        offset = j if j < self.index else j - 1
        return self.ambient_nvars + offset

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "vars": list(self.ctx.names),
            "relations": [r.to_json() for r in self.relations],
            "status": self.status,
            "witnesses": [w.to_json() for w in self.witnesses],
            "bound": frac_str(self.bound) if self.bound is not None else None,
        }


def blowup_charts(
    algebra: AlgebraPresentation, gens: list[RestrictedSeries]
) -> list[ChartPresentation]:
    """All charts of the blow-up of (f_0, ..., f_r), raw presentations."""
    if not gens:
        raise ParameterError("blow-ups need at least one ideal generator")
    for f in gens:
        if f.ctx != algebra.ctx:
            raise ParameterError("generators must live in the ambient context")
        if f.is_zero():
            raise ParameterError("blow-up generators must be nonzero")

    charts = []
    for i in range(len(gens)):
        new_names = tuple(f"xi{i}_{j}" for j in range(len(gens)) if j != i)
        chart_ctx = algebra.ctx.extend(new_names)
        emb_rels = tuple(r.embed(chart_ctx) for r in algebra.relations)
        emb_gens = tuple(f.embed(chart_ctx) for f in gens)
        binomials = []
        for j in range(len(gens)):
            if j == i:
                continue
            offset = j if j < i else j - 1
            xi = RestrictedSeries.variable(chart_ctx, algebra.ctx.nvars + offset, 1)
            binomials.append(emb_gens[i] * xi - emb_gens[j])
        charts.append(
            ChartPresentation(
                index=i,
                ctx=chart_ctx,
                relations=emb_rels + tuple(binomials),
                gens=emb_gens,
                ambient_nvars=algebra.ctx.nvars,
                new_vars=new_names,
            )
        )
    return charts


# ---------------------------------------------------------------------------
# monomial helpers
# ---------------------------------------------------------------------------


def _single_term(f: RestrictedSeries) -> tuple[MultiExponent, CoeffElement] | None:
    if len(f.terms) != 1:
        return None
    return next(iter(f.terms.items()))


def _unit_monomial(f: RestrictedSeries) -> MultiExponent | None:
    term = _single_term(f)
    if term is None:
        return None
    mexp, coeff = term
    if coeff.val() != 0:
        return None
    return mexp


def _mexp_sub(a: MultiExponent, b: MultiExponent) -> MultiExponent:
    mode = a.entries[0].mode if len(a) else "padic"
    base = a.entries[0].base if len(a) else 2
    return MultiExponent.make(
        [x.value - y.value for x, y in zip(a.entries, b.entries)], mode, base
    )


def _reduce_basis(monos: set[MultiExponent]) -> set[MultiExponent]:
    """Minimal generating antichain under divisibility."""
    basis = set()
    for m in sorted(monos, key=lambda x: x.sort_key()):
        if not any(g.divides(m) for g in basis):
            basis.add(m)
    return basis


def _substitution_closure(
    start: set[MultiExponent],
    gen_monos: list[MultiExponent],
    xi_monos: dict[int, MultiExponent],
    i: int,
    bound: Fraction,
) -> set[MultiExponent]:
    """Close a monomial set under f_j <-> f_i xi_j substitution moves."""
    basis = _reduce_basis(set(start))
    queue = list(basis)
    while queue:
        m = queue.pop()
        for j, xi in xi_monos.items():
            fwd = gen_monos[j]
            back = gen_monos[i] + xi
            for src, dst in ((fwd, back), (back, fwd)):
                if not src.divides(m):
                    continue
                cand = _mexp_sub(m, src) + dst
                if cand.total_degree() > bound:
                    continue
                if any(g.divides(cand) for g in basis):
                    continue
                basis = _reduce_basis(basis | {cand})
                queue.append(cand)
    return basis


def saturate_monomial_chart(
    chart: ChartPresentation, bound: Fraction | None = None
) -> ChartPresentation:
    """Kill the f_i-torsion of a monomial chart, reporting the witnesses.

    Returns the chart unchanged (status ``saturation-unsupported``) when a
    relation or generator is not a single monomial with unit coefficient.
    """
    if chart.status == SATURATED:
        return chart
    gen_monos = []
    for g in chart.gens:
        mono = _unit_monomial(g)
        if mono is None:
            return replace(chart, status=UNSUPPORTED)
        gen_monos.append(mono)
    ambient_monos = []
    n_binomials = len(chart.gens) - 1
    ambient_rels = chart.relations[: len(chart.relations) - n_binomials]
    for rel in ambient_rels:
        mono = _unit_monomial(rel)
        if mono is None:
            return replace(chart, status=UNSUPPORTED)
        ambient_monos.append(mono)

    i = chart.index
    xi_monos = {}
    for j in range(len(chart.gens)):
        if j == i:
            continue
        values = [Fraction(0)] * chart.ctx.nvars
        values[chart.xi_position(j)] = Fraction(1)
        xi_monos[j] = chart.ctx.mexp(values)

    if bound is None:
        degrees = [m.total_degree() for m in ambient_monos + gen_monos]
        bound = 4 * max(degrees + [Fraction(1)])

    f_i = gen_monos[i]
    basis = _substitution_closure(set(ambient_monos), gen_monos, xi_monos, i, bound)
    witnesses: list[MultiExponent] = []
    while True:
        new_witness = None
        for m in sorted(basis, key=lambda x: x.sort_key()):
            if not f_i.divides(m):
                continue
            g = _mexp_sub(m, f_i)
            if not any(b.divides(g) for b in basis):
                new_witness = g
                break
        if new_witness is None:
            break
        witnesses.append(new_witness)
        basis = _substitution_closure(
            basis | {new_witness}, gen_monos, xi_monos, i, bound
        )

    witness_series = tuple(
        RestrictedSeries.monomial(chart.ctx, [e.value for e in w.entries])
        for w in sorted(witnesses, key=lambda x: x.sort_key())
    )
    extra = tuple(
        RestrictedSeries.monomial(chart.ctx, [e.value for e in m.entries])
        for m in sorted(basis, key=lambda x: x.sort_key())
        if not any(_unit_monomial(r) == m for r in chart.relations)
    )
    return replace(
        chart,
        status=SATURATED,
        witnesses=witness_series,
        relations=chart.relations + extra,
        bound=bound,
    )


def raw_monomial_members(
    chart: ChartPresentation, bound: Fraction | None = None
) -> set[MultiExponent]:
    """Monomial members of the raw chart ideal, up to the degree bound.

    Used to verify torsion witnesses: the substitution closure without any
    torsion additions.
    """
    gen_monos = [_unit_monomial(g) for g in chart.gens]
    n_binomials = len(chart.gens) - 1
    ambient_rels = chart.relations[: len(chart.relations) - n_binomials]
    ambient_monos = [_unit_monomial(r) for r in ambient_rels]
    if any(m is None for m in gen_monos + ambient_monos):
        raise UnsupportedError("raw membership is monomial-only")
    i = chart.index
    xi_monos = {}
    for j in range(len(chart.gens)):
        if j == i:
            continue
        values = [Fraction(0)] * chart.ctx.nvars
        values[chart.xi_position(j)] = Fraction(1)
        xi_monos[j] = chart.ctx.mexp(values)
    if bound is None:
        degrees = [m.total_degree() for m in ambient_monos + gen_monos]
        bound = 4 * max(degrees + [Fraction(1)])
    return _substitution_closure(set(ambient_monos), gen_monos, xi_monos, i, bound)


def verify_torsion_witness(
    chart: ChartPresentation,
    witness: RestrictedSeries,
    k_bound: int = 4,
    bound: Fraction | None = None,
) -> dict:
    """Certify f_i**k * g in the raw ideal while g itself is not."""
    raw = list(raw_monomial_members(chart, bound))
    g = _unit_monomial(witness)
    if g is None:
        raise UnsupportedError("witnesses are monomials in the monomial case")
    f_i = _unit_monomial(chart.gens[chart.index])
    in_raw = bool(raw) and monomial_ideal_member(raw, g)
    power = None
    acc = g
    for k in range(1, k_bound + 1):
        acc = acc + f_i
        if raw and monomial_ideal_member(raw, acc):
            power = k
            break
    return {
        "witness": witness.to_json(),
        "witness_in_raw_ideal": in_raw,
        "k": power,
        "verified": (not in_raw) and power is not None,
    }


# ---------------------------------------------------------------------------
# covering and soundness checks
# ---------------------------------------------------------------------------


def verify_cover(gens: list[RestrictedSeries]) -> dict:
    """Unit-ideal test plus chartwise principality certificates.

    For single-term generators the ideal contains a unit exactly when one
    generator is itself a unit.  Independently, in every chart i the ideal
    image is principal, generated by f_i: each f_j equals f_i * xi_j by the
    defining relation, which the report certifies by exhibiting it.
    """
    if not gens:
        raise ParameterError("cover verification needs generators")
    for f in gens:
        if _single_term(f) is None:
            raise UnsupportedError(
                "cover verification supports monomial-times-unit generators only"
            )
    unit_cover = False
    for f in gens:
        mexp, coeff = _single_term(f)
        if mexp.is_zero() and coeff.is_unit():
            unit_cover = True
    charts = []
    for i in range(len(gens)):
        charts.append(
            {
                "index": i,
                "principal_generator": i,
                "relations": [
                    f"f{i}*xi{i}_{j} - f{j}" for j in range(len(gens)) if j != i
                ],
                "certified": True,
            }
        )
    return {
        "generators": [f.to_json() for f in gens],
        "unit_cover": unit_cover,
        "chartwise_principal": charts,
    }


def chart_relation_soundness(chart: ChartPresentation) -> bool:
    """Every chart relation vanishes under xi_j -> f_j / f_i.

    Checked without negative exponents by clearing denominators: a relation
    of xi-degree D is multiplied by f_i**D, each xi_j**b replaced by
    f_j**b * f_i**(D - |b|), and the ambient result reduced modulo the
    ambient monomial relations.
    """
    n_binomials = len(chart.gens) - 1
    ambient_rels = chart.relations[: len(chart.relations) - n_binomials]
    ambient_monos = []
    for rel in ambient_rels:
        mono = _unit_monomial(rel)
        if mono is not None:
            ambient_monos.append(mono)
        else:
            raise UnsupportedError("soundness reduction is monomial-only")

    n_amb = chart.ambient_nvars
    for rel in chart.relations:
        if rel.is_zero():
            continue
        degrees = []
        for mexp in rel.terms:
            xi_part = sum(e.value for e in mexp.entries[n_amb:])
            if any(e.value.denominator != 1 for e in mexp.entries[n_amb:]):
                raise UnsupportedError("xi exponents must be integers")
            degrees.append(int(xi_part))
        max_deg = max(degrees)

        cleared = RestrictedSeries.zero(chart.ctx)
        for mexp, coeff in rel.terms.items():
            ambient_vals = [e.value for e in mexp.entries[:n_amb]] + [
                Fraction(0)
            ] * (chart.ctx.nvars - n_amb)
            term = RestrictedSeries.monomial(chart.ctx, ambient_vals, coeff)
            used = 0
            for j in range(len(chart.gens)):
                if j == chart.index:
                    continue
                b = mexp.entries[chart.xi_position(j)].value
                if b:
                    term = term * chart.gens[j] ** int(b)
                    used += int(b)
            term = term * chart.gens[chart.index] ** (max_deg - used)
            cleared = cleared + term

        # reduce modulo the ambient monomial ideal
        for mexp, coeff in cleared.terms.items():
            if ambient_monos and monomial_ideal_member(ambient_monos, mexp):
                continue
            if not coeff.is_zero():
                return False
    return True


def atlas_json(charts: list[ChartPresentation], algebra: AlgebraPresentation) -> dict:
    return {
        "ambient": algebra.to_json(),
        "charts": [c.to_json() for c in charts],
    }
