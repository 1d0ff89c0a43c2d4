"""Input documents: JSON in, canonical JSON out.

A document names a polytope, a characteristic function over it, and
optional search knobs.  The two polytope forms and two lambda forms:

    {"polytope": {"product_of_simplices": [1, 1, 1]},
     "lambda":   {"bott": {"dims": [1, 1, 1], "lower_blocks": [1, 0, 0]}},
     "options":  {"strategy": "generators", "budget": 200000}}

    {"polytope": {"dual_complex": {"dim": 2, "facets": 4,
                   "maximal_simplices": [[0, 1], [1, 2], [2, 3], [0, 3]]}},
     "lambda":   {"explicit": {"columns": [[1, 0], [0, 1], [1, 0], [0, 1]]}}}

Explicit columns list one F2^n vector per facet, facet order.  The
bott form additionally remembers the matrix itself, which unlocks the
product-structure rules downstream.  render_document is canonical:
defaults are omitted, so parse(render(doc)) is the identity.
"""

from __future__ import annotations

import dataclasses
import json

from .charfun import BottMatrix, CharacteristicFunction, bott_to_characteristic
from .complexes import (
    SimplePolytopeCombinatorics,
    from_dual_complex,
    product_of_simplices,
)
from .f2linalg import F2Vector


class DocumentError(ValueError):
    """Malformed or inconsistent input document."""


STRATEGIES = ("generators", "linear", "full")


@dataclasses.dataclass(frozen=True)
class SearchOptions:
    strategy: str = "generators"
    exponent_cap: int | None = None
    budget: int | None = None
    assert_rz_simply_connected: bool = False


@dataclasses.dataclass(frozen=True)
class InputDocument:
    polytope: SimplePolytopeCombinatorics
    lam: CharacteristicFunction
    bott: BottMatrix | None
    options: SearchOptions


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DocumentError(message)


def _is_int(v) -> bool:
    # bool is an int subclass; a bare true/false is never a count
    return isinstance(v, int) and not isinstance(v, bool)


def _int_list(value, where: str, minimum: int) -> list[int]:
    _require(
        isinstance(value, list) and all(_is_int(v) and v >= minimum for v in value),
        f"{where} must be a list of integers >= {minimum}",
    )
    return list(value)


def _parse_polytope(data) -> SimplePolytopeCombinatorics:
    _require(
        isinstance(data, dict) and len(data) == 1,
        "polytope must be exactly one of product_of_simplices / dual_complex",
    )
    key, value = next(iter(data.items()))
    if key == "product_of_simplices":
        dims = _int_list(value, "polytope.product_of_simplices", 1)
        _require(bool(dims), "polytope.product_of_simplices must be non-empty")
        return product_of_simplices(dims)
    if key == "dual_complex":
        _require(isinstance(value, dict), "polytope.dual_complex must be an object")
        extra = set(value) - {"dim", "facets", "maximal_simplices"}
        _require(not extra, f"polytope.dual_complex has unknown keys {sorted(extra)}")
        _require(
            _is_int(value.get("dim")) and value["dim"] >= 1,
            "polytope.dual_complex.dim must be a positive integer",
        )
        _require(
            _is_int(value.get("facets")) and value["facets"] >= 1,
            "polytope.dual_complex.facets must be a positive integer",
        )
        simplices = value.get("maximal_simplices")
        _require(
            isinstance(simplices, list) and simplices,
            "polytope.dual_complex.maximal_simplices must be a non-empty list",
        )
        parsed = []
        for i, s in enumerate(simplices):
            verts = _int_list(s, f"polytope.dual_complex.maximal_simplices[{i}]", 0)
            _require(
                all(v < value["facets"] for v in verts),
                f"maximal_simplices[{i}] references a facet >= facets",
            )
            parsed.append(tuple(verts))
        try:
            return from_dual_complex(value["dim"], value["facets"], parsed)
        except ValueError as exc:
            raise DocumentError(f"polytope.dual_complex: {exc}") from exc
    raise DocumentError(f"unknown polytope form {key!r}")


def _parse_lambda(data, p: SimplePolytopeCombinatorics):
    _require(
        isinstance(data, dict) and len(data) == 1,
        "lambda must be exactly one of bott / explicit",
    )
    key, value = next(iter(data.items()))
    if key == "bott":
        _require(isinstance(value, dict), "lambda.bott must be an object")
        extra = set(value) - {"dims", "lower_blocks"}
        _require(not extra, f"lambda.bott has unknown keys {sorted(extra)}")
        dims = _int_list(value.get("dims"), "lambda.bott.dims", 1)
        blocks = _int_list(value.get("lower_blocks"), "lambda.bott.lower_blocks", 0)
        try:
            b = BottMatrix.from_lower_blocks(dims, blocks)
        except ValueError as exc:
            raise DocumentError(f"lambda.bott: {exc}") from exc
        _require(
            p.product_dims == tuple(dims),
            "lambda.bott.dims must match the polytope simplex dimensions",
        )
        return bott_to_characteristic(b), b
    if key == "explicit":
        _require(isinstance(value, dict), "lambda.explicit must be an object")
        extra = set(value) - {"columns"}
        _require(not extra, f"lambda.explicit has unknown keys {sorted(extra)}")
        cols = value.get("columns")
        _require(
            isinstance(cols, list) and len(cols) == p.facet_count,
            f"lambda.explicit.columns must list one column per facet "
            f"({p.facet_count} expected)",
        )
        vectors = []
        for i, col in enumerate(cols):
            bits = _int_list(col, f"lambda.explicit.columns[{i}]", 0)
            _require(
                len(bits) == p.dim and all(v <= 1 for v in bits),
                f"lambda.explicit.columns[{i}] must be {p.dim} bits",
            )
            packed = sum(1 << k for k, v in enumerate(bits) if v)
            vectors.append(F2Vector.from_bits(packed, p.dim))
        return CharacteristicFunction(p.dim, tuple(vectors)), None
    raise DocumentError(f"unknown lambda form {key!r}")


def _parse_options(data) -> SearchOptions:
    if data is None:
        return SearchOptions()
    _require(isinstance(data, dict), "options must be an object")
    known = {"strategy", "exponent_cap", "budget", "assert_rz_simply_connected"}
    extra = set(data) - known
    _require(not extra, f"options has unknown keys {sorted(extra)}")
    strategy = data.get("strategy", "generators")
    _require(
        strategy in STRATEGIES,
        f"options.strategy must be one of {', '.join(STRATEGIES)}",
    )
    cap = data.get("exponent_cap")
    _require(
        cap is None or (_is_int(cap) and cap >= 1),
        "options.exponent_cap must be a positive integer",
    )
    budget = data.get("budget")
    _require(
        budget is None or (_is_int(budget) and budget >= 1),
        "options.budget must be a positive integer",
    )
    flag = data.get("assert_rz_simply_connected", False)
    _require(
        isinstance(flag, bool),
        "options.assert_rz_simply_connected must be a boolean",
    )
    return SearchOptions(
        strategy=strategy,
        exponent_cap=cap,
        budget=budget,
        assert_rz_simply_connected=flag,
    )


def document_from_data(data) -> InputDocument:
    _require(isinstance(data, dict), "document must be a JSON object")
    extra = set(data) - {"polytope", "lambda", "options"}
    _require(not extra, f"document has unknown keys {sorted(extra)}")
    _require("polytope" in data, "document needs a polytope")
    _require("lambda" in data, "document needs a lambda")
    p = _parse_polytope(data["polytope"])
    lam, bott = _parse_lambda(data["lambda"], p)
    options = _parse_options(data.get("options"))
    return InputDocument(polytope=p, lam=lam, bott=bott, options=options)


def parse_document(text: str) -> InputDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return document_from_data(data)


def load_document(path) -> InputDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


def render_document(doc: InputDocument) -> str:
    if doc.polytope.product_dims is not None:
        polytope = {"product_of_simplices": list(doc.polytope.product_dims)}
    else:
        polytope = {
            "dual_complex": {
                "dim": doc.polytope.dim,
                "facets": doc.polytope.facet_count,
                "maximal_simplices": [
                    list(s) for s in doc.polytope.dual.maximal_simplices
                ],
            }
        }
    if doc.bott is not None:
        lam = {
            "bott": {
                "dims": list(doc.bott.dims),
                "lower_blocks": list(doc.bott.lower_blocks()),
            }
        }
    else:
        lam = {"explicit": {"columns": [list(v) for v in doc.lam.vectors]}}
    data = {"polytope": polytope, "lambda": lam}
    opts = {}
    o = doc.options
    if o.strategy != "generators":
        opts["strategy"] = o.strategy
    if o.exponent_cap is not None:
        opts["exponent_cap"] = o.exponent_cap
    if o.budget is not None:
        opts["budget"] = o.budget
    if o.assert_rz_simply_connected:
        opts["assert_rz_simply_connected"] = True
    if opts:
        data["options"] = opts
    return json.dumps(data, indent=2) + "\n"
