"""Deterministic text and JSON rendering.

Same objects in, same bytes out: no timestamps, no environment probes,
no hash-order dependence.  Reports are meant to be diffed across runs,
so every collection is sorted or carries an explicit order before it
hits the output.
"""

from __future__ import annotations

import json
from typing import Iterable

Monomial = tuple[int, ...]


def monomial_str(mono: Monomial, var: str = "y") -> str:
    """y1y2^2 style; the empty monomial prints as 1."""
    parts = []
    for j, e in enumerate(mono):
        if e == 0:
            continue
        parts.append(f"{var}{j + 1}" if e == 1 else f"{var}{j + 1}^{e}")
    return "".join(parts) if parts else "1"


def polynomial_str(monos: Iterable[Monomial], var: str = "y") -> str:
    """Sum of distinct monomials, largest exponent tuple first so the
    y1-heavy term leads."""
    terms = sorted(set(monos), reverse=True)
    if not terms:
        return "0"
    return "+".join(monomial_str(t, var) for t in terms)


def class_str(u, var: str = "y") -> str:
    if u.is_zero:
        return "0"
    return polynomial_str(u.monomials(), var)


def tensor_term_str(pair: tuple[Monomial, Monomial], var: str = "y") -> str:
    left, right = pair
    return f"{monomial_str(left, var)} (x) {monomial_str(right, var)}"


def tensor_str(t, var: str = "y") -> str:
    """Tensor-square class as a sum of monomial pairs, ordered by left
    degree, then left and right monomials descending."""
    if t.is_zero:
        return "0"
    pairs = sorted(
        t.monomial_pairs(),
        key=lambda ab: (sum(ab[0]), tuple(-x for x in ab[0]), tuple(-x for x in ab[1])),
    )
    return " + ".join(tensor_term_str(p, var) for p in pairs)


def certificate_str(cert, var: str = "y") -> str:
    if cert is None:
        return "no nonzero product found"
    head = " * ".join(
        f.label if f.power == 1 else f"{f.label}^{f.power}" for f in cert.factors
    )
    out = f"{head} != 0"
    if cert.witness is not None:
        out += f", witness {tensor_term_str(cert.witness, var)}"
    return out


def zcl_str(z, var: str = "y") -> str:
    tail = "" if z.complete else "  [budget hit: value is only a lower bound]"
    if z.certificate is None:
        return f"{z.value}{tail}"
    return f"{z.value}: {certificate_str(z.certificate, var)}{tail}"


def _zcl_json(z) -> dict:
    cert = None
    if z.certificate is not None:
        cert = {
            "factors": [[f.label, f.power] for f in z.certificate.factors],
            "witness": (
                None
                if z.certificate.witness is None
                else [list(m) for m in z.certificate.witness]
            ),
        }
    return {
        "value": z.value,
        "complete": z.complete,
        "nodes": z.nodes,
        "certificate": cert,
    }


def _entry_value_str(e) -> str:
    if e.lo is None:
        return "unavailable"
    if e.exact:
        return f"= {e.lo}"
    return f"in [{e.lo}, {e.hi}]"


def bounds_text(report) -> str:
    lines = []
    shape = f"n={report.dim}, {report.facet_count} facets, {report.vertex_count} vertices"
    if report.product_dims is not None:
        shape += " (product of simplices " + " x ".join(
            str(d) for d in report.product_dims
        ) + ")"
    lines.append(shape)
    lines.append(f"zero-divisor cup-length {zcl_str(report.zcl)}")
    lines.append(f"norm cup-length         {zcl_str(report.norm)}")
    for e in report.entries:
        head = f"{e.name:<7}{_entry_value_str(e):<13}{e.method}"
        lines.append(head)
        if e.note:
            lines.append(f"       note: {e.note}")
    return "\n".join(lines)


def bounds_json(report) -> dict:
    return {
        "dim": report.dim,
        "facet_count": report.facet_count,
        "vertex_count": report.vertex_count,
        "product_dims": (
            None if report.product_dims is None else list(report.product_dims)
        ),
        "zcl": _zcl_json(report.zcl),
        "norm_cl": _zcl_json(report.norm),
        "invariants": {
            e.name: {
                "lo": e.lo,
                "hi": e.hi,
                "exact": e.exact,
                "method": e.method,
                "note": e.note,
            }
            for e in report.entries
        },
    }


def cohomology_text(red, alg, max_degree: int | None = None) -> str:
    """Reduced presentation plus graded basis, one degree per line."""
    lines = []
    sub = red.substitution_map()
    names = ", ".join(
        f"y{k + 1}=v{f + 1}" for k, f in enumerate(red.survivors)
    )
    lines.append(
        f"{red.facet_count} facets, {red.num_vars} generators after "
        f"eliminating the linear ideal: {names}"
    )
    for facet in sorted(sub):
        mask = sub[facet]
        image = [
            (0,) * k + (1,) + (0,) * (red.num_vars - k - 1)
            for k in range(red.num_vars)
            if mask >> k & 1
        ]
        lines.append(f"  v{facet + 1} -> {polynomial_str(image)}")
    rels = sorted(red.generators, key=lambda g: sorted(g, reverse=True), reverse=True)
    lines.append(f"relations ({len(rels)}):")
    for g in rels:
        lines.append(f"  {polynomial_str(g)} = 0")
    top = alg.top_degree if max_degree is None else min(max_degree, alg.top_degree)
    dims = [alg.dim(d) for d in range(alg.top_degree + 1)]
    lines.append(f"graded dimensions: {dims} (total {sum(dims)})")
    for d in range(top + 1):
        basis = ", ".join(monomial_str(m) for m in alg.basis(d))
        lines.append(f"  H^{d}: {basis}")
    return "\n".join(lines)


def cohomology_json(red, alg, max_degree: int | None = None) -> dict:
    top = alg.top_degree if max_degree is None else min(max_degree, alg.top_degree)
    return {
        "facet_count": red.facet_count,
        "survivors": list(red.survivors),
        "substitution": {str(f): mask for f, mask in sorted(red.substitution)},
        "relations": [
            [list(m) for m in sorted(g, reverse=True)]
            for g in sorted(
                red.generators, key=lambda g: sorted(g, reverse=True), reverse=True
            )
        ],
        "dims": [alg.dim(d) for d in range(alg.top_degree + 1)],
        "basis": {
            str(d): [monomial_str(m) for m in alg.basis(d)] for d in range(top + 1)
        },
    }


def to_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"
