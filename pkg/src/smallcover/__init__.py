"""Mod-2 cohomology of small covers with certified sectional category bounds.

The pipeline: a simple polytope given by its dual complex (or as a
product of simplices), a characteristic function over F2 (possibly
from a Bott tower), the graded cohomology ring, and from there
cup-length style lower bounds and dimension upper bounds for the
category and topological complexity invariants, each with an explicit
nonzero product as certificate.
"""

from .charfun import (
    BottMatrix,
    CharacteristicFunction,
    ValidationResult,
    bott_to_characteristic,
    count_bott,
    enumerate_bott,
    is_projective_product,
    normalize_bott,
    validate_characteristic,
)
from .cohomology import (
    CohomologyClass,
    GradedF2Algebra,
    TensorClass,
    TensorSquare,
    bar,
    fundamental_checks,
    small_cover_algebra,
    tensor_square,
)
from .complexes import (
    SimplePolytopeCombinatorics,
    SimplicialComplex,
    equivariant_cat_rzk,
    from_dual_complex,
    product_of_simplices,
)
from .docio import (
    DocumentError,
    InputDocument,
    SearchOptions,
    load_document,
    parse_document,
    render_document,
)
from .invariants import (
    BoundsReport,
    Certificate,
    ZclResult,
    bounds_report,
    classify_two_factor,
    cup_length,
    norm_cl,
    zcl_lower,
)

__version__ = "0.1.0"

__all__ = [
    "BottMatrix",
    "BoundsReport",
    "Certificate",
    "CharacteristicFunction",
    "CohomologyClass",
    "DocumentError",
    "GradedF2Algebra",
    "InputDocument",
    "SearchOptions",
    "SimplePolytopeCombinatorics",
    "SimplicialComplex",
    "TensorClass",
    "TensorSquare",
    "ValidationResult",
    "ZclResult",
    "bar",
    "bott_to_characteristic",
    "bounds_report",
    "classify_two_factor",
    "count_bott",
    "cup_length",
    "enumerate_bott",
    "equivariant_cat_rzk",
    "from_dual_complex",
    "fundamental_checks",
    "is_projective_product",
    "load_document",
    "norm_cl",
    "normalize_bott",
    "parse_document",
    "product_of_simplices",
    "render_document",
    "small_cover_algebra",
    "tensor_square",
    "validate_characteristic",
    "zcl_lower",
]
