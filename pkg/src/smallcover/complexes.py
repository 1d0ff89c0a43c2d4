"""Dual complexes of simple polytopes.

A simple n-polytope enters the pipeline only through the combinatorics
of its facets: the simplicial complex on the facet set whose faces are
the facet subsets with nonempty common intersection.  For a product of
simplices that complex is written down directly; arbitrary simple
polytopes are accepted as an explicit dual complex.

Facet indexing for P = prod_j Delta^{n_j} (0-based): with N_s = n_1 +
... + n_s, the facet F_k^j (1 <= k <= n_j) sits at index N_{j-1}+k-1
and the remaining facet F_0^j of factor j sits at index n+j-1.  The
polynomial variable attached to facet i is x_{i+1}; the last m of them
are the y_j that survive reduction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class SimplicialComplex:
    """Abstract simplicial complex given by its maximal simplices."""

    def __init__(self, vertex_count: int, maximal_simplices):
        faces = sorted({tuple(sorted(set(s))) for s in maximal_simplices})
        if not faces:
            raise ValueError("need at least one maximal simplex")
        covered = set()
        for f in faces:
            if f and (f[0] < 0 or f[-1] >= vertex_count):
                raise ValueError(f"vertex out of range in {f}")
            covered.update(f)
        if covered != set(range(vertex_count)):
            missing = sorted(set(range(vertex_count)) - covered)
            raise ValueError(f"vertices {missing} lie in no maximal simplex")
        face_sets = [frozenset(f) for f in faces]
        for a, b in itertools.combinations(face_sets, 2):
            if a <= b or b <= a:
                raise ValueError("maximal simplices must form an antichain")
        self.vertex_count = vertex_count
        self.maximal_simplices = tuple(faces)
        self._max_sets = tuple(face_sets)
        self._nonfaces = None

    def is_simplex(self, s) -> bool:
        s = frozenset(s)
        return any(s <= f for f in self._max_sets)

    def dimension(self) -> int:
        return max(len(f) for f in self.maximal_simplices) - 1

    def is_pure(self) -> bool:
        sizes = {len(f) for f in self.maximal_simplices}
        return len(sizes) == 1

    def minimal_nonfaces(self) -> tuple[tuple[int, ...], ...]:
        """All inclusion-minimal non-faces, sorted.

        A subset is a minimal non-face when it is not contained in any
        maximal simplex but every proper subset is.  Found by walking
        subsets in order of increasing cardinality; it suffices to test
        the corank-1 subsets for faceness.  Cached: the complex is
        immutable and presentation building hits this repeatedly.
        """
        if self._nonfaces is not None:
            return self._nonfaces
        found: list[tuple[int, ...]] = []
        found_sets: list[frozenset] = []
        verts = range(self.vertex_count)
        for size in range(1, self.vertex_count + 1):
            for cand in itertools.combinations(verts, size):
                cs = frozenset(cand)
                if self.is_simplex(cs):
                    continue
                if any(nf < cs for nf in found_sets):
                    continue
                if all(
                    self.is_simplex(cs - {v}) for v in cand
                ):
                    found.append(cand)
                    found_sets.append(cs)
        self._nonfaces = tuple(sorted(found))
        return self._nonfaces

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertex_count == other.vertex_count
            and self.maximal_simplices == other.maximal_simplices
        )

    def __hash__(self):
        return hash((self.vertex_count, self.maximal_simplices))

    def __repr__(self):
        return (
            f"SimplicialComplex({self.vertex_count}, "
            f"{[list(f) for f in self.maximal_simplices]})"
        )


@dataclass(frozen=True)
class SimplePolytopeCombinatorics:
    """Combinatorial data of a simple polytope: dimension, facet count
    and the dual complex on the facet set.

    ``product_dims`` is set when the polytope is a product of simplices
    built by :func:`product_of_simplices`; it unlocks the closed-form
    structure results (real moment-angle manifold as a sphere product,
    facet indexing for Bott matrices).
    """

    dim: int
    facet_count: int
    dual: SimplicialComplex = field(compare=False)
    product_dims: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.dual.vertex_count != self.facet_count:
            raise ValueError("dual complex must live on the facet set")
        sizes = {len(f) for f in self.dual.maximal_simplices}
        if sizes != {self.dim}:
            raise ValueError(
                "dual complex of a simple n-polytope must be pure of "
                f"dimension n-1; got simplex sizes {sorted(sizes)}"
            )

    @property
    def is_product_of_simplices(self) -> bool:
        return self.product_dims is not None

    def vertex_count(self) -> int:
        """Number of vertices of the polytope (maximal simplices of the dual)."""
        return len(self.dual.maximal_simplices)


def product_of_simplices(dims) -> SimplePolytopeCombinatorics:
    """Combinatorics of Delta^{n_1} x ... x Delta^{n_m}.

    A facet subset is a face of the dual precisely when it omits at
    least one facet of every factor; the maximal simplices (polytope
    vertices) pick all facets of each factor except one.
    """
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ValueError("factor dimensions must be positive integers")
    n = sum(dims)
    m = len(dims)
    r = n + m
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    # facet indices of factor j: the n_j coordinate facets, then F_0^j
    factor_facets = [
        list(range(offsets[j], offsets[j + 1])) + [n + j] for j in range(m)
    ]
    maximal = []
    for omit in itertools.product(*[range(d + 1) for d in dims]):
        simplex: list[int] = []
        for j, ell in enumerate(omit):
            # omit F_ell^j; local position of F_0^j is n_j
            skip = dims[j] if ell == 0 else ell - 1
            fac = factor_facets[j]
            simplex.extend(fac[t] for t in range(len(fac)) if t != skip)
        maximal.append(tuple(sorted(simplex)))
    dual = SimplicialComplex(r, maximal)
    # closed form: the unique minimal non-face of factor j is its full
    # facet set, so skip the generic subset walk
    dual._nonfaces = tuple(
        sorted(tuple(sorted(fac)) for fac in factor_facets)
    )
    return SimplePolytopeCombinatorics(
        dim=n, facet_count=r, dual=dual, product_dims=dims
    )


def from_dual_complex(n: int, facets: int, maximal_simplices) -> SimplePolytopeCombinatorics:
    """Wrap an explicitly given dual complex (general simple polytope)."""
    dual = SimplicialComplex(facets, maximal_simplices)
    return SimplePolytopeCombinatorics(dim=n, facet_count=facets, dual=dual)


def minimal_nonfaces(k: SimplicialComplex) -> tuple[tuple[int, ...], ...]:
    return k.minimal_nonfaces()


def maximal_simplices(k: SimplicialComplex) -> tuple[tuple[int, ...], ...]:
    return k.maximal_simplices


def vertex_count(p: SimplePolytopeCombinatorics) -> int:
    return p.vertex_count()


def equivariant_cat_rzk(k: SimplicialComplex) -> int:
    """Equivariant category of the real moment-angle complex over K
    under the full coordinate 2-torus: the number of maximal simplices.
    """
    return len(k.maximal_simplices)


def rz_product_spheres(p: SimplePolytopeCombinatorics) -> tuple[tuple[int, ...], bool]:
    """Sphere-product shape of the real moment-angle manifold.

    For P = prod Delta^{n_j} the real moment-angle manifold is
    S^{n_1} x ... x S^{n_m}; it is simply connected iff every n_j >= 2.
    Raises for polytopes that are not products of simplices, where no
    closed form is implemented.
    """
    if p.product_dims is None:
        raise ValueError(
            "real moment-angle structure is only computed for products of simplices"
        )
    return p.product_dims, all(d >= 2 for d in p.product_dims)


def product_facet_index(dims, j: int, k: int) -> int:
    """Global 0-based index of facet F_k^j (k = 0 selects F_0^j)."""
    dims = tuple(dims)
    if not 1 <= j <= len(dims):
        raise ValueError("factor index out of range")
    if not 0 <= k <= dims[j - 1]:
        raise ValueError("facet index out of range for the factor")
    n = sum(dims)
    if k == 0:
        return n + j - 1
    return sum(dims[: j - 1]) + k - 1
