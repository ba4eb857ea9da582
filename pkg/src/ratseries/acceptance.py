"""The acceptance grid: one callable per criterion, shared by the test
suite and the ``selftest`` CLI subcommand.

Every criterion is exact (tolerance zero); randomized suites use a fixed
seed so repeated runs are byte identical.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

from .blowup import (
    AlgebraPresentation,
    blowup_charts,
    chart_relation_soundness,
    saturate_monomial_chart,
    verify_cover,
    verify_torsion_witness,
)
from .cech import TwistDegree, cech_report, rank_growth
from .coefficients import CHAR0, ring_make
from .exponents import monomial_ideal_member
from .functors import additivity_obstruction, equivalence_check, functor_mod_p
from .series import RestrictedSeries, RootTower, make_context, series_evaluate

DEFAULT_SEED = 20250809

RING_GRID = [(2, 3, 1, 4), (3, 2, 2, 3), (5, 5, 1, 4)]


def random_series(ctx, rng, max_terms=3, max_scale=1, max_val_pi=None, nonzero=False):
    while True:
        terms = {}
        for _ in range(rng.randrange(0, max_terms + 1)):
            exps = []
            for _ in range(ctx.nvars):
                s = rng.randrange(0, max_scale + 1)
                exps.append(Fraction(rng.randrange(0, 3 * ctx.root_base**s),
                                     ctx.root_base**s))
            coeff = ctx.coeff.random_element(rng, max_val_pi=max_val_pi)
            if not coeff.is_zero():
                terms[ctx.mexp(exps)] = coeff
        f = RestrictedSeries(ctx, terms)
        if not nonzero or not f.is_zero():
            return f


def _result(cid, name, passed, detail, t0):
    return {
        "id": cid,
        "name": name,
        "passed": bool(passed),
        "detail": detail,
        "seconds": round(time.time() - t0, 3),
    }


def criterion_1_cohomology_oracle(rng=None):
    """Combinatorial H^i ranks equal boundary-matrix ranks on the grid."""
    t0 = time.time()
    failures = []
    checked = 0
    for n in (1, 2):
        for p in (2, 3):
            for k in (0, 1):
                scale = p**k
                for t in range(-6, 7):
                    m = TwistDegree.padic(Fraction(t, scale), p)
                    rep = cech_report(n, m, k, with_oracle=True)
                    checked += 1
                    if not rep["oracle"]["agrees"]:
                        failures.append((n, p, k, str(m)))
                    if k == 0:
                        h0 = math.comb(t + n, n) if t >= 0 else 0
                        hn = math.comb(-t - 1, n) if -t - 1 >= n else 0
                        if rep["ranks"][0] != h0:
                            failures.append(("h0-classical", n, p, t))
                        if rep["ranks"][n] != hn:
                            failures.append(("hn-classical", n, p, t))
    return _result(
        1,
        "cohomology closed forms vs boundary-matrix oracle",
        not failures,
        f"{checked} grid reports, failures: {failures[:5]}",
        t0,
    )


def criterion_2_middle_vanishing(rng=None):
    """H^i = 0 for 0 < i < n across the criterion-1 grid."""
    t0 = time.time()
    failures = []
    for p in (2, 3):
        for k in (0, 1):
            scale = p**k
            for t in range(-6, 7):
                m = TwistDegree.padic(Fraction(t, scale), p)
                rep = cech_report(2, m, k, with_oracle=True)
                if rep["ranks"][1] != 0 or rep["oracle"]["ranks"][1] != 0:
                    failures.append((p, k, str(m)))
    return _result(
        2,
        "middle-degree vanishing",
        not failures,
        f"failures: {failures}",
        t0,
    )


def criterion_3_rank_growth(rng=None):
    """rank_growth(n=1, m=2, p=2, K=0..3) = (3, 5, 9, 17), strict."""
    t0 = time.time()
    table = rank_growth(1, TwistDegree.padic(2, 2), range(4))
    got = [row["rank"] for row in table["rows"]]
    want = [2 * 2**k + 1 for k in range(4)]
    ok = got == [3, 5, 9, 17] == want and table["strictly_increasing"]
    return _result(3, "infinite-rank witness via level growth", ok, f"ranks {got}", t0)


def _ring_law_failures(ring, rng, count):
    max_val = max((ring.window - 1) // 2, 0) if ring.kind == CHAR0 else None
    bad = []
    for _ in range(count):
        a = ring.random_element(rng)
        b = ring.random_element(rng)
        c = ring.random_element(rng)
        if (a + b) + c != a + (b + c):
            bad.append(("add-assoc", a, b, c))
        if a + b != b + a:
            bad.append(("add-comm", a, b))
        if (a * b) * c != a * (b * c):
            bad.append(("mul-assoc", a, b, c))
        if a * b != b * a:
            bad.append(("mul-comm", a, b))
        if a * (b + c) != a * b + a * c:
            bad.append(("distrib", a, b, c))
        if a * ring.one() != a or a + ring.zero() != a:
            bad.append(("units", a))
        u = ring.random_element(rng, max_val_pi=max_val)
        v = ring.random_element(rng, max_val_pi=max_val)
        if not u.is_zero() and not v.is_zero():
            if (u * v).val() != u.val() + v.val():
                bad.append(("val-mult", u, v))
        if bad:
            break
    return bad


def _series_law_failures(ctx, rng, count):
    ring = ctx.coeff
    half_window = max((ring.window - 1) // 2, 0)
    cap = max(half_window // 2, 1)
    bad = []
    for _ in range(count):
        f = random_series(ctx, rng)
        g = random_series(ctx, rng)
        h = random_series(ctx, rng)
        if (f + g) + h != f + (g + h):
            bad.append("add-assoc")
        if f + g != g + f:
            bad.append("add-comm")
        if (f * g) * h != f * (g * h):
            bad.append("mul-assoc")
        if f * g != g * f:
            bad.append("mul-comm")
        if f * (g + h) != f * g + f * h:
            bad.append("distrib")
        u = random_series(ctx, rng, max_val_pi=cap, nonzero=True)
        v = random_series(ctx, rng, max_val_pi=cap, nonzero=True)
        if (u * v).gauss_val() != u.gauss_val() + v.gauss_val():
            bad.append(("gauss-val-mult", str(u), str(v)))
        if bad:
            break
    return bad


def criterion_4_ring_laws(rng=None):
    """>= 1000 random triples per descriptor for coefficients and series."""
    t0 = time.time()
    rng = rng or random.Random(DEFAULT_SEED)
    failures = []
    for p, d, k, m in RING_GRID:
        ring = ring_make(CHAR0, p, d, k, m)
        failures += [(str(ring), f) for f in _ring_law_failures(ring, rng, 1000)]
        ctx = make_context(ring, ("X", "Y"))
        failures += [(str(ctx), f) for f in _series_law_failures(ctx, rng, 1000)]
    return _result(
        4,
        "ring laws and valuation multiplicativity (1000 triples/grid point)",
        not failures,
        f"failures: {failures[:3]}",
        t0,
    )


def criterion_5_equivalence_grid(rng=None):
    """Bijective reduction for p coprime to d; collisions for p | d."""
    t0 = time.time()
    anomalies = []
    for p in (3, 5):
        for d in (2, 4):
            for k in (0, 1, 2):
                for n in (1, 2):
                    rep = equivalence_check(p, d, k, n)
                    if not (rep["injective"] and rep["surjective"] and rep["pass"]):
                        anomalies.append((p, d, k, n))
    for p, d in ((2, 2), (3, 3)):
        rep = equivalence_check(p, d, 1, 2)
        if not rep["collisions"] or not rep["pass"]:
            anomalies.append((p, d, "no-collision"))
    return _result(
        5,
        "mod-p reduction bijective iff p coprime to d (monomial towers)",
        not anomalies,
        f"anomalies: {anomalies}",
        t0,
    )


def criterion_6_additivity_obstruction(rng=None):
    """No d-th root of 1+X for (3,2); Frobenius root for (2,2), (3,3)."""
    t0 = time.time()
    bad = []
    rep = additivity_obstruction(3, 2, depth=3, support_bound=6)
    if rep["found"]:
        bad.append("(3,2) unexpectedly solvable")
    for p, d in ((2, 2), (3, 3)):
        rep = additivity_obstruction(p, d, depth=2, support_bound=6)
        if not rep["found"] or not rep["frobenius_solution"]:
            bad.append(f"({p},{d}) Frobenius root missing")
    return _result(6, "additivity obstruction searches", not bad, f"{bad}", t0)


def criterion_7_kernel_witness(rng=None):
    """T^(1/2^(K+1)) never lies in (T, ..., T^(1/2^K)); T lies in (T^(1/2))."""
    t0 = time.time()
    ring = ring_make(CHAR0, 2, 2, 1, 3)
    ctx = make_context(ring, ("T",))
    bad = []
    for k in range(5):
        gens = [ctx.mexp([Fraction(1, 2**j)]) for j in range(k + 1)]
        target = ctx.mexp([Fraction(1, 2 ** (k + 1))])
        if monomial_ideal_member(gens, target):
            bad.append(f"K={k}")
    if not monomial_ideal_member([ctx.mexp([Fraction(1, 2)])], ctx.mexp([1])):
        bad.append("T not in (sqrt T)")
    return _result(
        7, "strictly growing kernel of the fractional ideal chain", not bad, f"{bad}", t0
    )


def criterion_8_blowup_atlas(rng=None):
    """Chart shapes, principality, and the torsion witness on R<x,y>/(xy)."""
    t0 = time.time()
    bad = []
    ring = ring_make(CHAR0, 2, 2, 1, 4)
    ctx = make_context(ring, ("x", "y"))
    x = RestrictedSeries.variable(ctx, 0, 1)
    y = RestrictedSeries.variable(ctx, 1, 1)

    charts = blowup_charts(AlgebraPresentation(ctx), [x, y])
    if len(charts) != 2:
        bad.append("chart count")
    c0, c1 = charts
    xi0 = RestrictedSeries.variable(c0.ctx, 2, 1)
    xi1 = RestrictedSeries.variable(c1.ctx, 2, 1)
    if c0.relations != (x.embed(c0.ctx) * xi0 - y.embed(c0.ctx),):
        bad.append("chart-0 relation")
    if c1.relations != (y.embed(c1.ctx) * xi1 - x.embed(c1.ctx),):
        bad.append("chart-1 relation")
    if not (chart_relation_soundness(c0) and chart_relation_soundness(c1)):
        bad.append("soundness")
    cover = verify_cover([x, y])
    if cover["unit_cover"] or not all(
        entry["certified"] for entry in cover["chartwise_principal"]
    ):
        bad.append("principality")
    if saturate_monomial_chart(c0).witnesses:
        bad.append("unexpected torsion")

    charts_sing = blowup_charts(AlgebraPresentation(ctx, (x * y,)), [x, y])
    saturated = saturate_monomial_chart(charts_sing[0])
    if not saturated.witnesses:
        bad.append("no torsion witness")
    else:
        for witness in saturated.witnesses:
            verdict = verify_torsion_witness(charts_sing[0], witness)
            if not verdict["verified"]:
                bad.append(f"witness {witness} unverified")
    return _result(8, "blow-up atlas and monomial saturation", not bad, f"{bad}", t0)


def criterion_9_modp_eval_compat(rng=None):
    """mod_p(eval(f, T)) == eval(mod_p f, reduce T) on >= 500 samples."""
    t0 = time.time()
    rng = rng or random.Random(DEFAULT_SEED + 9)
    ring = ring_make(CHAR0, 3, 2, 1, 4)
    ctx = make_context(ring, ("X",), root_base=2)
    failures = 0
    for _ in range(500):
        f = random_series(ctx, rng, max_terms=3, max_scale=1)
        unit = ring.random_element(rng, unit=True)
        a = rng.randrange(0, 3)
        b1 = unit * ring.pi_power(a)
        tower = RootTower(2, (b1 * b1, b1))
        left = series_evaluate(f, [tower]).mod_p()
        right = series_evaluate(
            functor_mod_p(f), [tower.map(lambda c: c.mod_p())]
        )
        if left != right:
            failures += 1
    return _result(
        9,
        "mod-p functor commutes with evaluation (500 samples)",
        failures == 0,
        f"failures: {failures}",
        t0,
    )


def criterion_10_serialization(rng=None):
    """All emitted CLI documents re-parse equal; reruns are byte identical."""
    t0 = time.time()
    from . import cli

    requests = cli.selftest_requests()
    first = [cli.render_request(argv) for argv in requests]
    second = [cli.render_request(argv) for argv in requests]
    bad = []
    if first != second:
        bad.append("outputs not byte-identical across reruns")
    for argv, out in zip(requests, first):
        if not cli.reparses_equal(argv, out):
            bad.append(f"round-trip failure for {' '.join(argv)}")
    return _result(
        10,
        "serialization round-trip and byte-identical reruns",
        not bad,
        f"{len(requests)} requests; {bad}",
        t0,
    )


CRITERIA = {
    1: criterion_1_cohomology_oracle,
    2: criterion_2_middle_vanishing,
    3: criterion_3_rank_growth,
    4: criterion_4_ring_laws,
    5: criterion_5_equivalence_grid,
    6: criterion_6_additivity_obstruction,
    7: criterion_7_kernel_witness,
    8: criterion_8_blowup_atlas,
    9: criterion_9_modp_eval_compat,
    10: criterion_10_serialization,
}


def run_criteria(ids=None, seed: int = DEFAULT_SEED) -> list[dict]:
    if ids is None:
        ids = sorted(CRITERIA)
    results = []
    for cid in ids:
        if cid not in CRITERIA:
            raise ValueError(f"unknown criterion {cid}")
        rng = random.Random(seed + cid)
        results.append(CRITERIA[cid](rng))
    return results
