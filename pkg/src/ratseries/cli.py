"""Batch command-line interface: JSON in, JSON/CSV out.

Exit codes: 0 success, 1 selftest failure, 2 parse/schema error, 3 domain
error, 4 resource ceiling.  Outputs are deterministic: identical requests
produce byte-identical documents.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import coefficients
from .blowup import (
    AlgebraPresentation,
    atlas_json,
    blowup_charts,
    saturate_monomial_chart,
)
from .cech import TwistDegree, cech_report, rank_growth
from .coefficients import CoeffElement, RingDescriptor, parse_frac, ring_make
from .errors import DomainError, ResourceLimitError, SchemaError
from .exponents import PADIC, RATIONAL, MultiExponent, monomial_ideal_member
from .functors import (
    additivity_obstruction,
    equivalence_check,
    functor_mod_p,
    rees_pieces,
)
from .series import RestrictedSeries, RootTower, series_evaluate


def load_doc(text: str):
    """Inline JSON (starts with a bracket) or a path to a JSON file."""
    stripped = text.strip()
    try:
        if stripped.startswith("{") or stripped.startswith("["):
            return json.loads(stripped)
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    except OSError as exc:
        raise SchemaError(f"cannot read document {text!r}: {exc}") from exc


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _load_series(text: str) -> RestrictedSeries:
    return RestrictedSeries.from_json(load_doc(text))


def _load_tower(doc: dict) -> RootTower:
    try:
        ring = RingDescriptor.from_json(doc["ring"])
        degree = int(doc["degree"])
        entries = tuple(CoeffElement.from_json(ring, e) for e in doc["entries"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad tower document: {exc}") from exc
    return RootTower(degree, entries)


# ---------------------------------------------------------------------------
# handlers (each returns the output text)
# ---------------------------------------------------------------------------


def _cmd_ring(args) -> str:
    ring = ring_make(args.kind, args.p, args.d, args.K, args.M, args.laurent)
    return _dump(ring.to_json())


def _cmd_add(args) -> str:
    return _dump((_load_series(args.lhs) + _load_series(args.rhs)).to_json())


def _cmd_mul(args) -> str:
    return _dump((_load_series(args.lhs) * _load_series(args.rhs)).to_json())


def _cmd_eval(args) -> str:
    series = _load_series(args.series)
    towers_doc = load_doc(args.towers)
    if isinstance(towers_doc, dict):
        towers_doc = towers_doc.get("towers", [towers_doc])
    towers = [_load_tower(t) for t in towers_doc]
    result = series_evaluate(series, towers)
    if isinstance(result, RestrictedSeries):
        return _dump({"kind": "series", "value": result.to_json()})
    return _dump(
        {"kind": "coefficient", "ring": result.ring.to_json(), "value": result.to_json()}
    )


def _cmd_shift(args) -> str:
    return _dump(_load_series(args.series).root_shift(args.levels).to_json())


def _cmd_val(args) -> str:
    v = _load_series(args.series).gauss_val()
    out = "inf" if v == coefficients.INFINITY else coefficients.frac_str(v)
    return _dump({"gauss_val": out})


def _cmd_member(args) -> str:
    doc = load_doc(args.doc)
    try:
        mode = doc.get("mode", PADIC)
        base = int(doc.get("base", 0))
        gens = [MultiExponent.from_json(g, mode, base) for g in doc["gens"]]
        target = MultiExponent.from_json(doc["t"], mode, base)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad membership document: {exc}") from exc
    return _dump({"member": monomial_ideal_member(gens, target)})


def _cmd_modp(args) -> str:
    return _dump(functor_mod_p(_load_series(args.series)).to_json())


def _cmd_equivalence(args) -> str:
    return _dump(equivalence_check(args.p, args.d, args.K, args.N, args.M))


def _cmd_obstruction(args) -> str:
    return _dump(additivity_obstruction(args.p, args.d, args.K, args.bound))


def _cmd_rees(args) -> str:
    ring = RingDescriptor.from_json(load_doc(args.ring))
    return _dump(rees_pieces(ring, args.mode, args.n_max, args.root_depth))


def _cmd_blowup(args) -> str:
    adoc = load_doc(args.algebra)
    try:
        relations = tuple(RestrictedSeries.from_json(r) for r in adoc.get("relations", []))
        gens = [RestrictedSeries.from_json(g) for g in load_doc(args.gens)]
    except (AttributeError, TypeError) as exc:
        raise SchemaError(f"bad blow-up input: {exc}") from exc
    if not gens:
        raise SchemaError("blow-up needs a nonempty generator list")
    ctx = relations[0].ctx if relations else gens[0].ctx
    algebra = AlgebraPresentation(ctx, relations, str(adoc.get("label", "A")))
    charts = blowup_charts(algebra, gens)
    if args.saturate:
        bound = Fraction(parse_frac(args.bound)) if args.bound else None
        charts = [saturate_monomial_chart(c, bound) for c in charts]
    return _dump(atlas_json(charts, algebra))


def _twist_from_args(args) -> TwistDegree:
    value = parse_frac(args.m)
    if args.mode == RATIONAL:
        return TwistDegree.rational(value)
    if args.p is None:
        raise SchemaError("dyadic cohomology needs --p")
    return TwistDegree.padic(value, args.p)


def _cohomology_csv(rep: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "m", "mode", "level", "i", "rank", "oracle"])
    oracle = rep["oracle"]["ranks"] if rep.get("oracle") else None
    for i, rank in enumerate(rep["ranks"]):
        writer.writerow(
            [
                rep["n"],
                rep["m"],
                rep["mode"],
                rep["level"],
                i,
                rank,
                oracle[i] if oracle is not None else "",
            ]
        )
    return buf.getvalue()


def _cmd_cohomology(args) -> str:
    twist = _twist_from_args(args)
    level = args.level if args.mode == PADIC else args.bound
    if level is None:
        raise SchemaError("missing --level (dyadic) or --bound (rational)")
    rep = cech_report(
        args.n, twist, level, with_oracle=args.with_oracle, with_basis=args.basis
    )
    if args.format == "csv":
        return _cohomology_csv(rep)
    return _dump(rep)


def _cmd_growth(args) -> str:
    if args.k_min > args.k_max:
        raise SchemaError("--k-min must not exceed --k-max")
    twist = TwistDegree.padic(parse_frac(args.m), args.p)
    rep = rank_growth(args.n, twist, range(args.k_min, args.k_max + 1))
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "m", "mode", "level", "i", "rank", "oracle"])
        for row in rep["rows"]:
            writer.writerow([rep["n"], rep["m"], rep["mode"], row["K"], row["i"], row["rank"], ""])
        return buf.getvalue()
    return _dump(rep)


def _cmd_selftest(args) -> tuple[int, str]:
    from . import acceptance

    if args.criteria is not None:
        try:
            ids = [int(x) for x in args.criteria.split(",") if x.strip()]
        except ValueError as exc:
            raise SchemaError(f"bad criteria list {args.criteria!r}") from exc
    else:
        ids = None
    if ids == []:
        return 0, "warning: empty criteria selection; vacuous pass\n"

    fault = 1 if args.mutate == "carry" else 0
    lines = []
    try:
        coefficients._CARRY_FAULT = fault
        results = acceptance.run_criteria(ids, seed=args.seed)
    finally:
        coefficients._CARRY_FAULT = 0
    ok = True
    for res in results:
        status = "PASS" if res["passed"] else "FAIL"
        ok = ok and res["passed"]
        lines.append(
            f"{status} criterion-{res['id']}: {res['name']} "
            f"({res['seconds']}s) {res['detail']}"
        )
    lines.append("selftest: " + ("all criteria passed" if ok else "FAILURES present"))
    return (0 if ok else 1), "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parser and dispatch
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratseries",
        description="Exact arithmetic and cohomology for restricted power "
        "series of rational degree.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring", help="construct a coefficient ring descriptor")
    p.add_argument("--kind", required=True)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--K", type=int, default=0)
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--laurent", action="store_true")
    p.set_defaults(func=_cmd_ring)

    for name, handler in (("add", _cmd_add), ("mul", _cmd_mul)):
        p = sub.add_parser(name, help=f"{name} two series documents")
        p.add_argument("--lhs", required=True)
        p.add_argument("--rhs", required=True)
        p.set_defaults(func=handler)

    p = sub.add_parser("eval", help="evaluate a series along root towers")
    p.add_argument("--series", required=True)
    p.add_argument("--towers", required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("shift", help="substitute X -> X^(1/base^levels)")
    p.add_argument("--series", required=True)
    p.add_argument("--levels", type=int, required=True)
    p.set_defaults(func=_cmd_shift)

    p = sub.add_parser("val", help="Gauss valuation of a series")
    p.add_argument("--series", required=True)
    p.set_defaults(func=_cmd_val)

    p = sub.add_parser("member", help="monomial ideal membership")
    p.add_argument("--doc", required=True)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("modp", help="mod-p reduction of a series")
    p.add_argument("--series", required=True)
    p.set_defaults(func=_cmd_modp)

    p = sub.add_parser("equivalence", help="reduction functor comparison report")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, default=4)
    p.set_defaults(func=_cmd_equivalence)

    p = sub.add_parser("obstruction", help="search for g with g^d = 1 + X")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--K", type=int, default=3)
    p.add_argument("--bound", type=int, default=6)
    p.set_defaults(func=_cmd_obstruction)

    p = sub.add_parser("rees", help="graded pieces of the (eka) Rees algebra")
    p.add_argument("--ring", required=True)
    p.add_argument("--mode", choices=["classical", "eka"], required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--root-depth", type=int, default=0)
    p.set_defaults(func=_cmd_rees)

    p = sub.add_parser("blowup", help="blow-up chart atlas")
    p.add_argument("--algebra", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--saturate", action="store_true")
    p.add_argument("--bound", default=None)
    p.set_defaults(func=_cmd_blowup)

    p = sub.add_parser("cohomology", help="H^i(P^n, O(m)) report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--mode", choices=[PADIC, RATIONAL], default=PADIC)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--with-oracle", action="store_true")
    p.add_argument("--basis", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_cohomology)

    p = sub.add_parser("growth", help="rank growth table over levels")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k-min", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_growth)

    p = sub.add_parser("selftest", help="run the acceptance grid")
    p.add_argument("--criteria", default=None, help="comma-separated ids")
    p.add_argument("--seed", type=int, default=20250809)
    p.add_argument("--mutate", choices=["carry"], default=None)
    p.set_defaults(func=_cmd_selftest)

    return parser


def run_request(argv) -> tuple[int, str, str]:
    """Dispatch one request; returns (exit code, stdout, stderr)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (int(exc.code or 0), "", "")
    try:
        out = args.func(args)
    except SchemaError as exc:
        return 2, "", f"schema error: {exc}\n"
    except ResourceLimitError as exc:
        return 4, "", f"resource limit: {exc}\n"
    except DomainError as exc:
        return 3, "", f"domain error: {exc}\n"
    if isinstance(out, tuple):
        return out[0], out[1], ""
    return 0, out, ""


def render_request(argv) -> str:
    """Output text of a successful request (used by the acceptance suite)."""
    code, out, err = run_request(argv)
    if code != 0:
        raise RuntimeError(f"request {argv} failed with {code}: {err}")
    return out


def reparses_equal(argv, output: str) -> bool:
    """Emitted document re-parses to an equal value (round-trip check)."""
    command = argv[0]
    if command in ("cohomology", "growth") and "--format" in argv:
        idx = argv.index("--format")
        if argv[idx + 1] == "csv":
            rows = list(csv.reader(io.StringIO(output)))
            if len(rows) < 2 or rows[0] != ["n", "m", "mode", "level", "i", "rank", "oracle"]:
                return False
            rewritten = io.StringIO()
            writer = csv.writer(rewritten)
            writer.writerows(rows)
            return rewritten.getvalue() == output
    doc = json.loads(output)
    if command == "ring":
        return RingDescriptor.from_json(doc).to_json() == doc
    if command in ("add", "mul", "shift", "modp"):
        return RestrictedSeries.from_json(doc).to_json() == doc
    if command == "eval":
        if doc["kind"] == "series":
            return RestrictedSeries.from_json(doc["value"]).to_json() == doc["value"]
        ring = RingDescriptor.from_json(doc["ring"])
        return CoeffElement.from_json(ring, doc["value"]).to_json() == doc["value"]
    if command == "blowup":
        for chart in doc["charts"]:
            for rel in chart["relations"]:
                if RestrictedSeries.from_json(rel).to_json() != rel:
                    return False
        return True
    # report documents: canonical JSON must round-trip through the parser
    return json.loads(json.dumps(doc)) == doc


def selftest_requests() -> list[list[str]]:
    """Fixed request battery for the determinism criterion."""
    from .series import make_context

    ring = ring_make("char0-eka", 2, 2, 1, 4)
    ctx = make_context(ring, ("X", "Y"))
    xr = RestrictedSeries.variable(ctx, 0, Fraction(1, 2))
    yr = RestrictedSeries.variable(ctx, 1, Fraction(1, 2))
    plus = json.dumps((xr + yr).to_json())
    minus = json.dumps((xr - yr).to_json())

    ctx1 = make_context(ring, ("X",))
    xp = (
        RestrictedSeries.variable(ctx1, 0, 1)
        - RestrictedSeries.constant(ctx1, ring.from_int(2))
    )
    x_minus_p = json.dumps(xp.to_json())
    mixed = RestrictedSeries(
        ctx1,
        {
            ctx1.mexp([1]): ring.from_int(2),
            ctx1.mexp([Fraction(1, 2)]): ring.uniformizer(),
        },
    )
    mixed_doc = json.dumps(mixed.to_json())
    tower = json.dumps(
        [
            {
                "degree": 2,
                "ring": ring.to_json(),
                "entries": [ring.from_int(2).to_json(), ring.uniformizer().to_json()],
            }
        ]
    )
    member_doc = json.dumps(
        {"mode": "padic", "base": 2, "gens": [[["1", "1"]]], "t": [["1", "0"]]}
    )
    algebra_doc = json.dumps({"label": "A", "relations": []})
    singular_doc = json.dumps(
        {
            "label": "A/(xy)",
            "relations": [
                (
                    RestrictedSeries.variable(ctx, 0, 1)
                    * RestrictedSeries.variable(ctx, 1, 1)
                ).to_json()
            ],
        }
    )
    gens_doc = json.dumps(
        [
            RestrictedSeries.variable(ctx, 0, 1).to_json(),
            RestrictedSeries.variable(ctx, 1, 1).to_json(),
        ]
    )
    return [
        ["ring", "--kind", "char0-eka", "--p", "3", "--d", "2", "--K", "1", "--M", "4"],
        ["add", "--lhs", plus, "--rhs", minus],
        ["mul", "--lhs", plus, "--rhs", minus],
        ["eval", "--series", mixed_doc, "--towers", tower],
        ["shift", "--series", x_minus_p, "--levels", "1"],
        ["val", "--series", mixed_doc],
        ["member", "--doc", member_doc],
        ["modp", "--series", x_minus_p],
        ["equivalence", "--p", "3", "--d", "2", "--K", "1", "--N", "1"],
        ["obstruction", "--p", "2", "--d", "2", "--K", "2", "--bound", "6"],
        ["rees", "--ring", json.dumps(ring.to_json()), "--mode", "eka",
         "--n-max", "2", "--root-depth", "1"],
        ["blowup", "--algebra", algebra_doc, "--gens", gens_doc, "--saturate"],
        ["blowup", "--algebra", singular_doc, "--gens", gens_doc, "--saturate"],
        ["cohomology", "--n", "1", "--m", "2", "--p", "2", "--level", "1",
         "--with-oracle"],
        ["cohomology", "--n", "2", "--m", "-4", "--p", "2", "--level", "1",
         "--with-oracle", "--format", "csv"],
        ["cohomology", "--n", "1", "--m", "1/3", "--mode", "rational",
         "--bound", "6", "--with-oracle"],
        ["growth", "--n", "1", "--m", "2", "--p", "2", "--k-min", "0",
         "--k-max", "3"],
    ]


def main(argv=None) -> int:
    code, out, err = run_request(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
