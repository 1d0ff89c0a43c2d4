"""Command line front end.

Subcommands:
    validate    check the characteristic function, print a witness if not
    cohomology  reduced presentation and graded basis
    bounds      certified bounds for the sectional category invariants
    classify    two-factor case analysis for a product of two simplices
    repro       rerun the frozen example computations and sweeps

Exit codes: 0 success, 1 a mathematical check failed, 2 unusable input,
3 success but a search stopped on its node budget (printed values are
still valid bounds, just possibly improvable).
"""

from __future__ import annotations

import argparse
import sys

from . import repro as repro_mod
from .charfun import is_projective_product, validate_characteristic
from .cohomology import small_cover_algebra
from .docio import DocumentError, load_document
from .invariants import (
    bounds_report,
    classify_two_factor,
    ring_isomorphic_to_projective_product,
    zcl_lower,
)
from .render import (
    bounds_json,
    bounds_text,
    certificate_str,
    cohomology_json,
    cohomology_text,
    to_json,
)


def _add_document_arg(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("document", help="path to a JSON input document")


def _add_format_arg(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default text)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smallcover",
        description="mod-2 cohomology and sectional category bounds for small covers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="check the characteristic function")
    _add_document_arg(p_val)
    _add_format_arg(p_val)
    p_val.set_defaults(func=cmd_validate)

    p_coh = sub.add_parser("cohomology", help="print the cohomology ring")
    _add_document_arg(p_coh)
    _add_format_arg(p_coh)
    p_coh.add_argument(
        "--max-degree",
        type=int,
        default=None,
        help="print the basis only up to this degree",
    )
    p_coh.set_defaults(func=cmd_cohomology)

    p_bnd = sub.add_parser("bounds", help="certified invariant bounds")
    _add_document_arg(p_bnd)
    _add_format_arg(p_bnd)
    p_bnd.add_argument(
        "--strategy",
        choices=("generators", "linear", "full"),
        default=None,
        help="zero-divisor factor pool (overrides the document)",
    )
    p_bnd.add_argument(
        "--exponent-cap",
        type=int,
        default=None,
        help="max exponent per factor in the product search",
    )
    p_bnd.add_argument(
        "--budget",
        type=int,
        default=None,
        help="node budget for the product search",
    )
    p_bnd.add_argument(
        "--assert-rz-simply-connected",
        action="store_true",
        help="assert the real moment-angle manifold is simply connected",
    )
    p_bnd.set_defaults(func=cmd_bounds)

    p_cls = sub.add_parser(
        "classify", help="two-factor lower-bound cases for a product of two simplices"
    )
    _add_document_arg(p_cls)
    _add_format_arg(p_cls)
    p_cls.set_defaults(func=cmd_classify)

    p_rep = sub.add_parser("repro", help="rerun the frozen example computations")
    _add_format_arg(p_rep)
    p_rep.add_argument(
        "--filter",
        default=None,
        help="only run rows whose name contains this substring",
    )
    p_rep.set_defaults(func=cmd_repro)

    return parser


def cmd_validate(args) -> int:
    doc = load_document(args.document)
    res = validate_characteristic(doc.polytope, doc.lam)
    if args.format == "json":
        witness = None if res.ok else sorted(res.witness)
        sys.stdout.write(to_json({"ok": res.ok, "witness": witness}))
    elif res.ok:
        print("valid characteristic function")
    else:
        facets = ", ".join(f"v{f + 1}" for f in sorted(res.witness))
        print(f"invalid: facets {facets} meet but their vectors are dependent")
    return 0 if res.ok else 1


def cmd_cohomology(args) -> int:
    doc = load_document(args.document)
    try:
        pres, red, alg = small_cover_algebra(doc.polytope, doc.lam)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        sys.stdout.write(to_json(cohomology_json(red, alg, args.max_degree)))
    else:
        print(cohomology_text(red, alg, args.max_degree))
    return 0


def cmd_bounds(args) -> int:
    doc = load_document(args.document)
    opts = doc.options
    strategy = args.strategy if args.strategy is not None else opts.strategy
    cap = args.exponent_cap if args.exponent_cap is not None else opts.exponent_cap
    budget = args.budget if args.budget is not None else opts.budget
    simply = args.assert_rz_simply_connected or opts.assert_rz_simply_connected
    try:
        rep = bounds_report(
            doc.polytope,
            doc.lam,
            bott=doc.bott,
            strategy=strategy,
            exponent_cap=cap,
            budget=budget,
            assert_rz_simply_connected=simply,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        sys.stdout.write(to_json(bounds_json(rep)))
    else:
        print(bounds_text(rep))
    return 0 if rep.zcl.complete and rep.norm.complete else 3


def cmd_classify(args) -> int:
    doc = load_document(args.document)
    dims = doc.polytope.product_dims
    if dims is None or len(dims) != 2:
        print(
            "error: classification needs a product of exactly two simplices",
            file=sys.stderr,
        )
        return 2
    n1, n2 = dims
    cases = classify_two_factor(n1, n2)
    product = doc.bott is not None and is_projective_product(doc.bott)
    payload = {
        "dims": [n1, n2],
        "projective_product": product,
        "cases": [],
    }
    lines = [f"product of simplices {n1} x {n2}"]
    if product:
        lines.append("the tower is the projective product itself")
    if not cases:
        lines.append("no case hypothesis applies")
    violated = False
    if cases:
        pres, red, alg = small_cover_algebra(doc.polytope, doc.lam)
        z = zcl_lower(alg)
        payload["zcl"] = z.value
        lines.append(f"zcl {z.value}: {certificate_str(z.certificate)}")
        ring_product = None
        for c in cases:
            met = product or z.value + 1 >= c.bound
            if not met and ring_product is None:
                ring_product = ring_isomorphic_to_projective_product(red, (n1, n2))
            effective = met or bool(ring_product)
            if not effective:
                violated = True
            payload["cases"].append(
                {
                    "case": c.case,
                    "bound": c.bound,
                    "met": met,
                    "ring_isomorphic_to_product": None if met else bool(ring_product),
                }
            )
            status = (
                "met"
                if met
                else (
                    "not met, but the ring is the product ring"
                    if ring_product
                    else "VIOLATED"
                )
            )
            lines.append(f"case {c.case}: tc lower bound {c.bound} ({status})")
    if args.format == "json":
        sys.stdout.write(to_json(payload))
    else:
        print("\n".join(lines))
    return 1 if violated else 0


def cmd_repro(args) -> int:
    results = repro_mod.run(args.filter)
    if args.format == "json":
        payload = [
            {"name": r.name, "ok": r.ok, "detail": r.detail} for r in results
        ]
        sys.stdout.write(to_json({"rows": payload, "ok": all(r.ok for r in results)}))
    else:
        for r in results:
            flag = "PASS" if r.ok else "FAIL"
            print(f"{flag} {r.name:<22} {r.seconds:7.2f}s  {r.detail}")
        failed = [r for r in results if not r.ok]
        total = sum(r.seconds for r in results)
        print(f"{len(results) - len(failed)}/{len(results)} rows pass, {total:.1f}s")
    if not results:
        print("error: no rows match the filter", file=sys.stderr)
        return 2
    return 0 if all(r.ok for r in results) else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
