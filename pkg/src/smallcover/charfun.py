"""Characteristic functions and Bott matrices.

A characteristic function assigns to every facet of a simple n-polytope
a vector in F2^n such that the vectors on any facet set with nonempty
intersection stay linearly independent (it suffices to check the
maximal intersections, i.e. the vertices).  Over a product of
simplices, the standard normal form is encoded by a Bott matrix: an
m x m array of F2 blocks, lower block-unitriangular, whose column j
stacked gives the value on facet F_0^j while the coordinate facets
carry the standard basis.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator

from .complexes import SimplePolytopeCombinatorics
from .f2linalg import F2Matrix, F2Vector, kernel_basis


class BudgetExceededError(RuntimeError):
    """An enumeration or search would exceed the caller's budget."""


class NoNormalFormError(ValueError):
    """No reordering of the factors makes the matrix lower unitriangular."""


@dataclass(frozen=True)
class CharacteristicFunction:
    """Facet-indexed list of vectors in F2^n."""

    n: int
    vectors: tuple[F2Vector, ...]

    def __post_init__(self):
        for v in self.vectors:
            if v.n != self.n:
                raise ValueError("all vectors must live in F2^n")

    @property
    def facet_count(self) -> int:
        return len(self.vectors)

    def matrix(self) -> F2Matrix:
        """The n x r matrix whose columns are the facet vectors."""
        return F2Matrix.from_columns(self.vectors)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


class BottMatrix:
    """m x m array of F2 blocks; block (k, j) lies in F2^{n_k}.

    ``blocks[k][j]`` is stored as a plain bit mask of width dims[k].
    A matrix is in normal form when every diagonal block is all ones
    and every block above the diagonal is zero; the strictly lower
    blocks are free.
    """

    __slots__ = ("dims", "blocks")

    def __init__(self, dims, blocks):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError("factor dimensions must be positive")
        m = len(dims)
        rows = []
        for k, row in enumerate(blocks):
            row = tuple(row)
            if len(row) != m:
                raise ValueError("blocks must form an m x m array")
            for b in row:
                if b < 0 or b >> dims[k]:
                    raise ValueError(
                        f"block row {k} entries must fit in {dims[k]} bits"
                    )
            rows.append(row)
        if len(rows) != m:
            raise ValueError("blocks must form an m x m array")
        self.dims = dims
        self.blocks = tuple(rows)

    @classmethod
    def from_lower_blocks(cls, dims, lower) -> "BottMatrix":
        """Normal form from the strictly lower blocks.

        ``lower`` lists beta_j^k for (k, j) in row-major order: (2,1),
        (3,1), (3,2), (4,1), ...  Each entry is either an iterable of
        bits of length n_k or, when n_k = 1, a bare 0/1.
        """
        dims = tuple(int(d) for d in dims)
        m = len(dims)
        lower = list(lower)
        if len(lower) != m * (m - 1) // 2:
            raise ValueError(
                f"expected {m * (m - 1) // 2} strictly lower blocks, got {len(lower)}"
            )
        blocks = [[0] * m for _ in range(m)]
        for k in range(m):
            blocks[k][k] = (1 << dims[k]) - 1
        pos = 0
        for k in range(1, m):
            for j in range(k):
                entry = lower[pos]
                pos += 1
                if isinstance(entry, int):
                    bits = int(entry)
                    if bits < 0 or bits >> dims[k]:
                        raise ValueError(
                            f"block ({k + 1},{j + 1}) must fit in {dims[k]} bits"
                        )
                else:
                    seq = [int(x) & 1 for x in entry]
                    if len(seq) != dims[k]:
                        raise ValueError(
                            f"block ({k + 1},{j + 1}) must have length {dims[k]}"
                        )
                    bits = 0
                    for i, x in enumerate(seq):
                        bits |= x << i
                blocks[k][j] = bits
        return cls(dims, blocks)

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return sum(self.dims)

    def is_normal_form(self) -> bool:
        for k in range(self.m):
            if self.blocks[k][k] != (1 << self.dims[k]) - 1:
                return False
            for j in range(k + 1, self.m):
                if self.blocks[k][j]:
                    return False
        return True

    def lower_blocks(self) -> tuple[int, ...]:
        """Strictly lower blocks as bit masks, in (2,1), (3,1), (3,2), ... order."""
        out = []
        for k in range(1, self.m):
            for j in range(k):
                out.append(self.blocks[k][j])
        return tuple(out)

    def lower_bits(self) -> int:
        """All strictly lower block bits packed into one integer (row-major
        block order, bits within a block in ascending coordinate order).
        Used as a stable enumeration key."""
        bits = 0
        shift = 0
        for k in range(1, self.m):
            for j in range(k):
                bits |= self.blocks[k][j] << shift
                shift += self.dims[k]
        return bits

    def permuted(self, perm) -> "BottMatrix":
        """Reindex the factors by ``perm``: new factor t is old factor perm[t]."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.m)):
            raise ValueError("not a permutation of the factors")
        dims = tuple(self.dims[p] for p in perm)
        blocks = [
            [self.blocks[perm[k]][perm[j]] for j in range(self.m)]
            for k in range(self.m)
        ]
        return BottMatrix(dims, blocks)

    def column(self, j: int) -> F2Vector:
        """Column j stacked into F2^n: the characteristic value on F_0^{j+1}."""
        bits = 0
        shift = 0
        for k in range(self.m):
            bits |= self.blocks[k][j] << shift
            shift += self.dims[k]
        return F2Vector.from_bits(bits, self.n)

    def __eq__(self, other):
        return (
            isinstance(other, BottMatrix)
            and self.dims == other.dims
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.dims, self.blocks))

    def __repr__(self):
        return f"BottMatrix(dims={self.dims}, lower={self.lower_blocks()})"


@functools.lru_cache(maxsize=64)
def _unit_vectors(n: int) -> tuple[F2Vector, ...]:
    return tuple(F2Vector.unit(i, n) for i in range(n))


def bott_to_characteristic(b: BottMatrix) -> CharacteristicFunction:
    """Characteristic function of the normal form: coordinate facet
    F_k^j carries the standard basis vector at its own index, F_0^j
    carries column j of the matrix."""
    n = b.n
    vectors = list(_unit_vectors(n))
    vectors.extend(b.column(j) for j in range(b.m))
    return CharacteristicFunction(n=n, vectors=tuple(vectors))


def _independent(cols: list[int], units: list[bool], simplex) -> bool:
    # Pivot on unit-vector columns first: they eliminate instantly, so
    # the quadratic work only touches the few non-unit columns.
    got = 0
    rest = []
    for i in simplex:
        c = cols[i]
        if units[i]:
            if got & c:
                return False
            got |= c
        else:
            rest.append(c)
    pivots: dict[int, int] = {}
    for c in rest:
        v = c & ~got
        while v:
            low = v & -v
            hit = pivots.get(low)
            if hit is None:
                pivots[low] = v
                break
            v ^= hit
        if v == 0:
            return False
    return True


def validate_characteristic(
    p: SimplePolytopeCombinatorics, lam: CharacteristicFunction
) -> ValidationResult:
    """Check linear independence on every maximal simplex of the dual.

    Returns the first violating facet set (in the sorted simplex order)
    as the witness.
    """
    if lam.facet_count != p.facet_count:
        raise ValueError(
            f"characteristic function has {lam.facet_count} vectors, "
            f"polytope has {p.facet_count} facets"
        )
    if lam.n != p.dim:
        raise ValueError(
            f"characteristic vectors live in F2^{lam.n}, polytope dimension is {p.dim}"
        )
    cols = [v.bits for v in lam.vectors]
    units = [c != 0 and (c & (c - 1)) == 0 for c in cols]
    for simplex in p.dual.maximal_simplices:
        if not _independent(cols, units, simplex):
            return ValidationResult(ok=False, witness=tuple(simplex))
    return ValidationResult(ok=True)


def normalize_bott(b: BottMatrix) -> tuple[BottMatrix, tuple[int, ...]]:
    """Reorder the factors so the matrix becomes lower unitriangular.

    Searches all factor orderings (nothing else: entries are never
    rewritten) and returns the first normal form in lexicographic
    permutation order together with the permutation used.  Raises
    NoNormalFormError when no ordering works.
    """
    for perm in itertools.permutations(range(b.m)):
        cand = b.permuted(perm)
        if cand.is_normal_form():
            return cand, perm
    raise NoNormalFormError(
        f"no factor ordering of dims={b.dims} yields a lower unitriangular matrix"
    )


@dataclass(frozen=True)
class LambdaKernel:
    """Basis of the subgroup of the facet 2-torus acting trivially on
    the characteristic data: the kernel of the n x r vector matrix."""

    r: int
    basis: tuple[F2Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


def lambda_kernel(lam: CharacteristicFunction) -> LambdaKernel:
    mat = lam.matrix()
    basis = kernel_basis(mat)
    if len(basis) != lam.facet_count - lam.n:
        raise ValueError(
            "characteristic matrix is not surjective: kernel rank "
            f"{len(basis)} != r - n = {lam.facet_count - lam.n}"
        )
    return LambdaKernel(r=lam.facet_count, basis=basis)


def bott_free_bits(dims) -> int:
    """Number of free bits in a normal form over the given factor dims."""
    dims = tuple(dims)
    return sum((k) * dims[k] for k in range(len(dims)))


def count_bott(dims) -> int:
    """Number of normal-form Bott matrices over the given factor dims."""
    return 1 << bott_free_bits(dims)


def enumerate_bott(dims, max_count: int | None = None) -> Iterator[BottMatrix]:
    """All normal-form Bott matrices over the given dims, in ascending
    order of the packed lower-block bits.

    Raises BudgetExceededError up front when the count would exceed
    ``max_count``.
    """
    dims = tuple(int(d) for d in dims)
    total = count_bott(dims)
    if max_count is not None and total > max_count:
        raise BudgetExceededError(
            f"{total} normal forms over dims={dims} exceed the budget {max_count}"
        )
    m = len(dims)
    slots = []  # (row, col, shift, mask) per strictly lower block
    shift = 0
    for k in range(1, m):
        for j in range(k):
            slots.append((k, j, shift, (1 << dims[k]) - 1))
            shift += dims[k]
    diag = [[(1 << dims[k]) - 1 if j == k else 0 for j in range(m)] for k in range(m)]
    for bits in range(total):
        blocks = [row[:] for row in diag]
        for k, j, sh, mask in slots:
            blocks[k][j] = (bits >> sh) & mask
        out = BottMatrix.__new__(BottMatrix)
        out.dims = dims
        out.blocks = tuple(tuple(row) for row in blocks)
        yield out


def is_projective_product(b: BottMatrix) -> bool:
    """True when every strictly lower block vanishes, i.e. the matrix
    presents the plain product of real projective spaces."""
    return all(x == 0 for x in b.lower_blocks())
