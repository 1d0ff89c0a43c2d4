"""Mod-2 cohomology rings of small covers.

The ring is presented as Z2[v_1..v_r]/(I + J): one degree-one variable
per facet, square-free monomial relations from the minimal non-faces,
and one linear relation per row of the characteristic matrix.  The
linear relations eliminate n variables; what remains is a quotient of
Z2[y_1..y_m], m = r - n, by homogeneous generators, and all graded
structure is computed there.

Two engines back the graded structure.  When the expanded generators
have pairwise coprime pure-power lead monomials (always true for Bott
normal forms, where generator j leads with y_j^{n_j+1}) they form a
Groebner basis outright, the box monomials {e : e_j <= n_j} are a
basis, and normal forms follow from confluent rewriting with
memoization.  Otherwise every degree is row-reduced explicitly over
its full monomial span.  Both use the same frozen monomial order:
exponent tuples compared ascending, pivots at the smallest tuple, so
printed bases prefer mixed monomials over pure powers.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable

from .charfun import CharacteristicFunction, validate_characteristic
from .complexes import SimplePolytopeCombinatorics
from .f2linalg import F2Matrix, F2Vector, rref

Monomial = tuple[int, ...]

# exponents are packed 6 bits per variable; every exponent seen here is
# bounded by twice the manifold dimension plus two, well under 64
_SHIFT = 6
_MASK = (1 << _SHIFT) - 1


def _pack(mono: Monomial) -> int:
    key = 0
    for j, e in enumerate(mono):
        key |= e << (j * _SHIFT)
    return key


def _unpack(key: int, m: int) -> Monomial:
    return tuple((key >> (j * _SHIFT)) & _MASK for j in range(m))


@functools.lru_cache(maxsize=512)
def _box_degree_data(caps: tuple[int, ...], d: int):
    """Degree-d slice of the box basis {e : e_j < caps_j}, with its
    packed-key index.  Shared by every algebra with these caps."""
    monos = sorted(
        e for e in itertools.product(*(range(c) for c in caps)) if sum(e) == d
    )
    index = {_pack(t): i for i, t in enumerate(monos)}
    return (tuple(monos), index, None, tuple(range(len(monos))), None)


def _monomials_of_degree(m: int, d: int) -> list[Monomial]:
    """All exponent tuples of total degree d, ascending tuple order."""
    if d == 0:
        return [(0,) * m]
    out = []
    for combo in itertools.combinations_with_replacement(range(m), d):
        e = [0] * m
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    out.sort()
    return out


@dataclass(frozen=True)
class DJPresentation:
    """Facet-variable presentation: square-free monomial generators
    indexed by minimal non-faces, one linear form per matrix row.

    The maximal simplices ride along as elimination candidates for the
    reduction step; on a valid input each of them indexes an
    invertible minor of the linear forms.
    """

    facet_count: int
    monomial_ideal: tuple[tuple[int, ...], ...]
    linear_forms: tuple[int, ...]  # bitmasks over facet variables
    maximal_simplices: tuple[tuple[int, ...], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.linear_forms)


@dataclass(frozen=True)
class ReducedPresentation:
    """Presentation after eliminating the linear ideal.

    survivors lists the kept facet indices (ascending); substitution
    maps each eliminated facet to a bitmask over survivor positions;
    generators are the images of the monomial generators, each a
    homogeneous polynomial stored as a frozenset of exponent tuples.
    """

    facet_count: int
    survivors: tuple[int, ...]
    substitution: tuple[tuple[int, int], ...]
    generators: tuple[frozenset, ...]

    @property
    def num_vars(self) -> int:
        return len(self.survivors)

    @property
    def dim(self) -> int:
        return self.facet_count - len(self.survivors)

    def substitution_map(self) -> dict[int, int]:
        return dict(self.substitution)


def build_presentation(
    p: SimplePolytopeCombinatorics,
    lam: CharacteristicFunction,
    check: bool = True,
) -> DJPresentation:
    """Monomial generators from minimal non-faces, linear forms from
    the rows of the characteristic matrix.  Raises on invalid input;
    pass check=False only when the caller validated already (sweeps)."""
    if check:
        res = validate_characteristic(p, lam)
        if not res:
            raise ValueError(
                f"characteristic function fails on facet set {res.witness}"
            )
    nonfaces = tuple(tuple(nf) for nf in p.dual.minimal_nonfaces())
    rows = lam.matrix().rows
    return DJPresentation(
        facet_count=p.facet_count,
        monomial_ideal=nonfaces,
        linear_forms=tuple(rows),
        maximal_simplices=tuple(tuple(s) for s in p.dual.maximal_simplices),
    )


def _expand_linear_product(forms: list[int], m: int) -> frozenset:
    """Product of linear forms over the survivor variables, mod 2.
    Each form is a bitmask over survivor positions."""
    acc = {(0,) * m: 1}
    for form in forms:
        nxt: dict[Monomial, int] = {}
        bits = form
        while bits:
            low = bits & -bits
            j = low.bit_length() - 1
            bits ^= low
            for mono in acc:
                e = list(mono)
                e[j] += 1
                key = tuple(e)
                if key in nxt:
                    del nxt[key]
                else:
                    nxt[key] = 1
        acc = nxt
        if not acc:
            break
    return frozenset(acc)


def reduce_presentation(pres: DJPresentation) -> ReducedPresentation:
    """Eliminate n variables along an invertible minor of the linear
    forms.

    The elimination set is the first n facets when their minor is
    invertible (the convention for products of simplices, where the
    survivors are then exactly the y_j), otherwise the first facet set
    in the sorted maximal-simplex order whose minor works.  Raises on
    rank-deficient linear forms.
    """
    r = pres.facet_count
    n = pres.dim
    mat = F2Matrix.from_row_bits(pres.linear_forms, r)
    _, pivots = rref(mat)
    if len(pivots) < n:
        raise ValueError("linear forms are rank deficient")

    candidates = [tuple(range(n))]
    candidates.extend(tuple(s) for s in pres.maximal_simplices)
    candidates.append(pivots)  # always invertible, keeps odd inputs alive
    for elim in candidates:
        if len(elim) != n:
            continue
        got = _try_eliminate(pres, elim)
        if got is not None:
            return got
    raise ValueError("no invertible minor found on the candidate facet sets")


def _try_eliminate(pres: DJPresentation, elim) -> ReducedPresentation | None:
    r = pres.facet_count
    n = pres.dim
    elim = tuple(elim)
    elim_set = set(elim)
    survivors = tuple(f for f in range(r) if f not in elim_set)
    m = len(survivors)
    if elim == tuple(range(n)):
        permuted = list(pres.linear_forms)
    else:
        order = list(elim) + list(survivors)
        inv = {f: i for i, f in enumerate(order)}
        permuted = []
        for form in pres.linear_forms:
            bits, out = form, 0
            while bits:
                low = bits & -bits
                out |= 1 << inv[low.bit_length() - 1]
                bits ^= low
            permuted.append(out)
    reduced, pivots = rref(F2Matrix.from_row_bits(permuted, r))
    if pivots != tuple(range(n)):
        return None

    sub = {}
    for i in range(n):
        sub[elim[i]] = reduced.rows[i] >> n  # survivor-position mask

    spos = {f: i for i, f in enumerate(survivors)}
    gens = []
    for nonface in pres.monomial_ideal:
        forms = []
        for f in nonface:
            forms.append(sub[f] if f in elim_set else 1 << spos[f])
        gens.append(_expand_linear_product(forms, m))
    return ReducedPresentation(
        facet_count=r,
        survivors=survivors,
        substitution=tuple(sorted(sub.items())),
        generators=tuple(gens),
    )


@dataclass(frozen=True)
class CohomologyClass:
    algebra: "GradedF2Algebra"
    degree: int
    coords: F2Vector

    @property
    def is_zero(self) -> bool:
        return self.coords.is_zero()

    def monomials(self) -> tuple[Monomial, ...]:
        basis = self.algebra.basis(self.degree)
        return tuple(basis[i] for i in self.coords.support())

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if other.algebra is not self.algebra or other.degree != self.degree:
            raise ValueError("classes live in different graded pieces")
        return CohomologyClass(self.algebra, self.degree, self.coords + other.coords)

    def __mul__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self.algebra.cup(self, other)

    def __repr__(self):
        from .render import monomial_str  # local: render depends on us

        if self.is_zero:
            return f"<0 in degree {self.degree}>"
        return "<" + " + ".join(monomial_str(t) for t in self.monomials()) + ">"


class GradedF2Algebra:
    """Graded basis and normal-form engine for Z2[y_1..y_m]/I.

    Instances are immutable once built; per-degree tables and normal
    forms are cached on first use.
    """

    def __init__(
        self, num_vars, top_degree, relations, force_generic=False,
        _trusted=False,
    ):
        self.num_vars = int(num_vars)
        self.top_degree = int(top_degree)
        if _trusted:
            # reduce_presentation output: frozensets of int tuples,
            # homogeneous by construction
            self.relations = tuple(g for g in relations if g)
        else:
            rels = []
            for g in relations:
                g = frozenset(tuple(int(e) for e in mono) for mono in g)
                if g:
                    rels.append(g)
            self.relations = tuple(rels)
            for g in self.relations:
                degs = {sum(mono) for mono in g}
                if len(degs) != 1:
                    raise ValueError("relations must be homogeneous")
        self._box_caps = None if force_generic else self._detect_box()
        if self._box_caps is not None:
            self._box_setup()
        self._degree_cache: dict[int, tuple] = {}
        self._nf_memo: dict[int, frozenset] = {}
        self._tp_memo: dict[int, int] = {}
        self._pair_cache: dict[tuple, int] = {}
        self._tensor = None

    # -- engine selection -------------------------------------------------

    def _detect_box(self):
        """Caps (n_j + 1) when every relation leads with a pure power of
        its own variable; None sends us down the generic path."""
        m = self.num_vars
        if len(self.relations) != m:
            return None
        caps = {}
        for g in self.relations:
            lm = min(g)
            support = [j for j, e in enumerate(lm) if e]
            if len(support) != 1:
                return None
            j = support[0]
            if j in caps:
                return None
            caps[j] = lm[j]
        if len(caps) != m or any(c < 1 for c in caps.values()):
            return None
        return tuple(caps[j] for j in range(m))

    def _box_setup(self):
        caps = self._box_caps
        self._box_lm = [c << (j * _SHIFT) for j, c in enumerate(caps)]
        deltas = [None] * self.num_vars
        for g in self.relations:
            lm = min(g)
            j = next(t for t, e in enumerate(lm) if e)
            lm_key = _pack(lm)
            deltas[j] = tuple(_pack(t) - lm_key for t in sorted(g) if t != lm)
        self._box_deltas = deltas
        self._corner = _pack(tuple(c - 1 for c in caps))
        # cap-overflow probe: while the top degree stays below 32 every
        # exponent does too, so bit 5 of each 6-bit slot is free to
        # catch e_j >= caps_j in one addition
        if self.top_degree < 32 and max(caps) <= 32:
            self._probe = sum(
                (32 - c) << (j * _SHIFT) for j, c in enumerate(caps)
            )
            self._topmask = sum(32 << (j * _SHIFT) for j in range(len(caps)))
        else:
            self._probe = None
            self._topmask = 0

    @property
    def is_box(self) -> bool:
        return self._box_caps is not None

    # -- per-degree tables -------------------------------------------------

    def _degree_data(self, d: int):
        """(monomials, packed index, pivot rows, basis positions,
        position-to-basis-slot map) for one degree."""
        cached = self._degree_cache.get(d)
        if cached is not None:
            return cached
        if self._box_caps is not None:
            data = _box_degree_data(self._box_caps, d)
            self._degree_cache[d] = data
            return data

        monos = _monomials_of_degree(self.num_vars, d)
        index = {_pack(t): i for i, t in enumerate(monos)}
        pivots: dict[int, int] = {}
        for g in self.relations:
            dg = sum(next(iter(g)))
            if dg > d:
                continue
            for mu in _monomials_of_degree(self.num_vars, d - dg):
                row = 0
                for t in g:
                    prod = tuple(a + b for a, b in zip(mu, t))
                    row |= 1 << index[_pack(prod)]
                while row:
                    low = row & -row
                    hit = pivots.get(low)
                    if hit is None:
                        break
                    row ^= hit
                if row:
                    low = row & -row
                    for pb, pr in pivots.items():
                        if pr & low:
                            pivots[pb] = pr ^ row
                    pivots[low] = row
        pivot_positions = {b.bit_length() - 1 for b in pivots}
        basis_pos = tuple(
            i for i in range(len(monos)) if i not in pivot_positions
        )
        slot = {pos: k for k, pos in enumerate(basis_pos)}
        data = (tuple(monos), index, pivots, basis_pos, slot)
        self._degree_cache[d] = data
        return data

    def dim(self, d: int) -> int:
        if d < 0 or d > self.top_degree:
            return 0
        return len(self._degree_data(d)[3])

    def dims(self) -> tuple[int, ...]:
        return tuple(self.dim(d) for d in range(self.top_degree + 1))

    def basis(self, d: int) -> tuple[Monomial, ...]:
        """Basis monomials of degree d in the frozen ascending order."""
        if d < 0 or d > self.top_degree:
            return ()
        monos, _, _, basis_pos, _ = self._degree_data(d)
        return tuple(monos[i] for i in basis_pos)

    def degree_dimension_raw(self, d: int) -> int:
        """Dimension without the top-degree clamp; lets callers verify
        the quotient really vanishes above the manifold dimension."""
        if d < 0:
            return 0
        return len(self._degree_data(d)[3])

    # -- normal forms -------------------------------------------------------

    def _over_cap(self, key: int) -> int:
        """Index of a variable whose exponent hits its cap, or -1."""
        if self._probe is not None:
            over = (key + self._probe) & self._topmask
            if not over:
                return -1
            return ((over & -over).bit_length() - 1) // _SHIFT
        caps = self._box_caps
        for t in range(self.num_vars):
            if (key >> (t * _SHIFT)) & _MASK >= caps[t]:
                return t
        return -1

    def _nf_box_key(self, key: int) -> frozenset:
        out = self._nf_memo.get(key)
        if out is not None:
            return out
        j = self._over_cap(key)
        if j < 0:
            out = frozenset((key,))
        else:
            acc: set[int] = set()
            for delta in self._box_deltas[j]:
                for b in self._nf_box_key(key + delta):
                    if b in acc:
                        acc.discard(b)
                    else:
                        acc.add(b)
            out = frozenset(acc)
        self._nf_memo[key] = out
        return out

    def _coords_from_parity(self, parity: dict[int, int], d: int) -> F2Vector:
        """Normal form of a packed-monomial parity table, as coordinates
        over the degree-d basis."""
        monos, index, pivots, basis_pos, slot = self._degree_data(d)
        bits = 0
        if self._box_caps is not None:
            for key, odd in parity.items():
                if not odd:
                    continue
                for b in self._nf_box_key(key):
                    bits ^= 1 << index[b]
            return F2Vector.from_bits(bits, len(basis_pos))
        mask = 0
        for key, odd in parity.items():
            if odd:
                mask ^= 1 << index[key]
        for pb, pr in pivots.items():
            if mask & pb:
                mask ^= pr
        for pos, k in slot.items():
            if mask & (1 << pos):
                bits |= 1 << k
        return F2Vector.from_bits(bits, len(basis_pos))

    def class_from_polynomial(self, monos: Iterable[Monomial]) -> CohomologyClass:
        parity: dict[int, int] = {}
        degree = None
        for mono in monos:
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.num_vars:
                raise ValueError("wrong number of variables")
            d = sum(mono)
            if degree is None:
                degree = d
            elif d != degree:
                raise ValueError("polynomial is not homogeneous")
            key = _pack(mono)
            parity[key] = parity.get(key, 0) ^ 1
        if degree is None:
            raise ValueError("empty polynomial has no degree")
        if degree > self.top_degree:
            return self.zero(self.top_degree + 1)
        return CohomologyClass(self, degree, self._coords_from_parity(parity, degree))

    def monomial_class(self, mono: Monomial) -> CohomologyClass:
        return self.class_from_polynomial([mono])

    def monomial_nonzero(self, mono: Monomial) -> bool:
        """Whether a monomial reduces to a nonzero class.  Box mode
        skips coordinate extraction, so sweeps can afford it."""
        if sum(mono) > self.top_degree:
            return False
        if self._box_caps is not None:
            return bool(self._nf_box_key(_pack(mono)))
        return not self.monomial_class(mono).is_zero

    def zero(self, d: int) -> CohomologyClass:
        return CohomologyClass(self, d, F2Vector.zero(self.dim(d)))

    def one(self) -> CohomologyClass:
        return self.monomial_class((0,) * self.num_vars)

    def generator(self, j: int) -> CohomologyClass:
        """The class y_{j+1} (0-based j)."""
        e = [0] * self.num_vars
        e[j] = 1
        return self.monomial_class(tuple(e))

    def cup(self, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
        if a.algebra is not self or b.algebra is not self:
            raise ValueError("classes come from a different algebra")
        d = a.degree + b.degree
        if d > self.top_degree:
            return self.zero(self.top_degree + 1)
        pa = [_pack(t) for t in self.basis(a.degree)]
        pb = [_pack(t) for t in self.basis(b.degree)]
        parity: dict[int, int] = {}
        for i in a.coords.support():
            ka = pa[i]
            for j in b.coords.support():
                key = ka + pb[j]
                parity[key] = parity.get(key, 0) ^ 1
        return CohomologyClass(self, d, self._coords_from_parity(parity, d))

    def top_parity(self, mono: Monomial) -> int:
        """Coefficient of the fundamental class in the normal form of a
        degree-n monomial.  The workhorse of the duality pairing."""
        if sum(mono) != self.top_degree:
            raise ValueError("top_parity needs a top-degree monomial")
        return self._top_parity_key(_pack(mono))

    def _top_parity_key(self, key: int) -> int:
        if self._box_caps is None:
            d = self.top_degree
            if self.dim(d) != 1:
                raise ValueError("top degree is not one-dimensional")
            parity = {key: 1}
            return self._coords_from_parity(parity, d).bits & 1
        memo = self._tp_memo
        got = memo.get(key)
        if got is not None:
            return got
        probe = self._probe
        topmask = self._topmask
        deltas = self._box_deltas
        corner = self._corner
        # explicit stack: each node waits for its children, then folds
        stack = [key]
        if probe is not None:
            while stack:
                k = stack[-1]
                if k in memo:
                    stack.pop()
                    continue
                over = (k + probe) & topmask
                if not over:
                    memo[k] = 1 if k == corner else 0
                    stack.pop()
                    continue
                j = ((over & -over).bit_length() - 1) // _SHIFT
                out = 0
                ready = True
                for delta in deltas[j]:
                    v = memo.get(k + delta)
                    if v is None:
                        ready = False
                        stack.append(k + delta)
                    else:
                        out ^= v
                if ready:
                    memo[k] = out
                    stack.pop()
        else:
            while stack:
                k = stack[-1]
                if k in memo:
                    stack.pop()
                    continue
                j = self._over_cap(k)
                if j < 0:
                    memo[k] = 1 if k == corner else 0
                    stack.pop()
                    continue
                out = 0
                ready = True
                for delta in deltas[j]:
                    v = memo.get(k + delta)
                    if v is None:
                        ready = False
                        stack.append(k + delta)
                    else:
                        out ^= v
                if ready:
                    memo[k] = out
                    stack.pop()
        return memo[key]

    def __repr__(self):
        mode = "box" if self.is_box else "generic"
        return (
            f"GradedF2Algebra(num_vars={self.num_vars}, "
            f"top_degree={self.top_degree}, mode={mode})"
        )


def graded_basis(
    red: ReducedPresentation, top: int | None = None, force_generic: bool = False
) -> GradedF2Algebra:
    """Build the graded algebra from a reduced presentation.

    top defaults to the manifold dimension; asking for more verifies
    that every extra degree vanishes, which is a hard error when it
    does not (the quotient of a small cover is zero above degree n).
    """
    n = red.dim
    if top is None:
        top = n
    if top < n:
        raise ValueError(f"top={top} is below the manifold dimension {n}")
    alg = GradedF2Algebra(
        num_vars=red.num_vars,
        top_degree=n,
        relations=red.generators,
        force_generic=force_generic,
        _trusted=True,
    )
    for d in range(n + 1, top + 1):
        extra = alg.degree_dimension_raw(d)
        if extra:
            raise ValueError(
                f"quotient has dimension {extra} in degree {d}, above the "
                f"manifold dimension {n}"
            )
    return alg


def facet_class(
    alg: GradedF2Algebra, red: ReducedPresentation, facet: int
) -> CohomologyClass:
    """The degree-1 class of a facet variable x_i under the reduction."""
    spos = {f: i for i, f in enumerate(red.survivors)}
    if facet in spos:
        return alg.generator(spos[facet])
    mask = red.substitution_map()[facet]
    monos = []
    bits = mask
    while bits:
        low = bits & -bits
        j = low.bit_length() - 1
        bits ^= low
        e = [0] * alg.num_vars
        e[j] = 1
        monos.append(tuple(e))
    if not monos:
        return alg.zero(1)
    return alg.class_from_polynomial(monos)


# -- duality and consistency checks ----------------------------------------


@dataclass(frozen=True)
class FundamentalReport:
    ok: bool
    total_dim: int
    expected_total: int
    top_dim: int
    failures: tuple[str, ...] = ()


@functools.lru_cache(maxsize=512)
def _pairing_layout(left, right):
    """Packed product keys for one pairing block H^d x H^{n-d}.

    Returns (distinct keys, rows) where rows[i][k] indexes into the key
    tuple for left[i] * right[k].  Cached on the basis tuples: every
    matrix in one box family shares the layout, so a structural sweep
    pays for the tuple arithmetic once."""
    index: dict[int, int] = {}
    keys: list[int] = []
    rows = []
    for e in left:
        row = []
        for f in right:
            key = _pack(tuple(a + b for a, b in zip(e, f)))
            slot = index.get(key)
            if slot is None:
                slot = index[key] = len(keys)
                keys.append(key)
            row.append(slot)
        rows.append(tuple(row))
    return tuple(keys), tuple(rows)


def fundamental_checks(
    alg: GradedF2Algebra, p: SimplePolytopeCombinatorics
) -> FundamentalReport:
    """Poincare-style consistency: one-dimensional top degree, total
    dimension equal to the vertex count, and a non-degenerate cup
    pairing H^d x H^{n-d} -> H^n in every degree.

    Only d <= n/2 is ranked explicitly; the complementary block is the
    transpose, so it is singular exactly when this one is."""
    n = alg.top_degree
    failures = []
    dims = alg.dims()
    total = sum(dims)
    expected = p.vertex_count()
    if dims[n] != 1:
        failures.append(f"dim H^{n} = {dims[n]}, expected 1")
    if total != expected:
        failures.append(f"total dimension {total}, expected {expected}")
    for d in range(n // 2 + 1):
        left = alg.basis(d)
        right = alg.basis(n - d)
        if len(left) != len(right):
            failures.append(
                f"dim H^{d} = {len(left)} but dim H^{n - d} = {len(right)}"
            )
            continue
        keys, layout = _pairing_layout(left, right)
        par = [alg._top_parity_key(k) for k in keys]
        rows = []
        for lrow in layout:
            row = 0
            for k, slot in enumerate(lrow):
                if par[slot]:
                    row |= 1 << k
            rows.append(row)
        rank = _mask_rank(rows)
        if rank != len(left):
            failures.append(
                f"pairing in degrees {d} and {n - d} has rank "
                f"{rank} < {len(left)}"
            )
    return FundamentalReport(
        ok=not failures,
        total_dim=total,
        expected_total=expected,
        top_dim=dims[n],
        failures=tuple(failures),
    )


def _mask_rank(rows) -> int:
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            hit = pivots.get(low)
            if hit is None:
                pivots[low] = row
                break
            row ^= hit
    return len(pivots)


# -- tensor square ----------------------------------------------------------

TensorTerm = tuple[int, int, int, int]  # (d1, i1, d2, i2), basis indices


@dataclass(frozen=True)
class TensorClass:
    square: "TensorSquare"
    degree: int
    terms: frozenset

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> tuple[TensorTerm, ...]:
        return tuple(sorted(self.terms))

    def monomial_pairs(self) -> tuple[tuple[Monomial, Monomial], ...]:
        alg = self.square.algebra
        out = []
        for d1, i1, d2, i2 in sorted(self.terms):
            out.append((alg.basis(d1)[i1], alg.basis(d2)[i2]))
        return tuple(out)

    def __mul__(self, other: "TensorClass") -> "TensorClass":
        return self.square.multiply(self, other)


class TensorSquare:
    """H* tensor H* with the componentwise product; signs vanish mod 2.

    Pair products of basis classes are cached, so long products (the
    zero-divisor searches) mostly hit the cache.
    """

    def __init__(self, algebra: GradedF2Algebra):
        self.algebra = algebra
        self.top_degree = 2 * algebra.top_degree

    def dim(self, d: int) -> int:
        a = self.algebra
        return sum(
            a.dim(i) * a.dim(d - i) for i in range(d + 1)
        )

    def one(self) -> TensorClass:
        return TensorClass(self, 0, frozenset({(0, 0, 0, 0)}))

    def zero(self, d: int = 0) -> TensorClass:
        return TensorClass(self, d, frozenset())

    def from_sides(self, a: CohomologyClass, b: CohomologyClass) -> TensorClass:
        terms = set()
        for i in a.coords.support():
            for j in b.coords.support():
                terms.add((a.degree, i, b.degree, j))
        return TensorClass(self, a.degree + b.degree, frozenset(terms))

    def bar(self, u: CohomologyClass) -> TensorClass:
        """1 (x) u + u (x) 1, the basic zero divisor of a class."""
        if u.algebra is not self.algebra:
            raise ValueError("class comes from a different algebra")
        if u.degree != 1:
            raise ValueError("bar expects a degree-1 class")
        terms = set()
        for i in u.coords.support():
            terms.add((0, 0, 1, i))
            terms.add((1, i, 0, 0))
        return TensorClass(self, 1, frozenset(terms))

    def _pair_product(self, d1: int, i1: int, d2: int, i2: int) -> tuple[int, int]:
        """coords bitmask of basis_i1 * basis_i2 plus the target degree."""
        key = (d1, i1, d2, i2)
        got = self.algebra._pair_cache.get(key)
        d = d1 + d2
        if got is None:
            a = self.algebra
            if d > a.top_degree:
                got = 0
            else:
                ca = CohomologyClass(a, d1, F2Vector.from_bits(1 << i1, a.dim(d1)))
                cb = CohomologyClass(a, d2, F2Vector.from_bits(1 << i2, a.dim(d2)))
                got = a.cup(ca, cb).coords.bits
            a._pair_cache[key] = got
        return got, d

    def multiply(self, s: TensorClass, t: TensorClass) -> TensorClass:
        if s.square is not self or t.square is not self:
            raise ValueError("tensor classes from different squares")
        degree = s.degree + t.degree
        if degree > self.top_degree:
            return TensorClass(self, degree, frozenset())
        parity: dict[TensorTerm, int] = {}
        for a1, i1, b1, j1 in s.terms:
            for a2, i2, b2, j2 in t.terms:
                left, dl = self._pair_product(a1, i1, a2, i2)
                if not left:
                    continue
                right, dr = self._pair_product(b1, j1, b2, j2)
                if not right:
                    continue
                lb = left
                while lb:
                    li = lb & -lb
                    i = li.bit_length() - 1
                    lb ^= li
                    rb = right
                    while rb:
                        ri = rb & -rb
                        j = ri.bit_length() - 1
                        rb ^= ri
                        term = (dl, i, dr, j)
                        parity[term] = parity.get(term, 0) ^ 1
        terms = frozenset(k for k, v in parity.items() if v)
        return TensorClass(self, degree, terms)

    def power(self, t: TensorClass, e: int) -> TensorClass:
        out = self.one()
        for _ in range(e):
            out = self.multiply(out, t)
        return out

    def multiplication_image(self, t: TensorClass) -> CohomologyClass:
        """Image under a (x) b -> ab; zero exactly for zero divisors."""
        a = self.algebra
        parity: dict[int, int] = {}
        degree = t.degree
        if degree > a.top_degree:
            return a.zero(a.top_degree + 1)
        for d1, i1, d2, i2 in t.terms:
            ka = _pack(a.basis(d1)[i1])
            kb = _pack(a.basis(d2)[i2])
            key = ka + kb
            parity[key] = parity.get(key, 0) ^ 1
        return CohomologyClass(a, degree, a._coords_from_parity(parity, degree))


def tensor_square(alg: GradedF2Algebra) -> TensorSquare:
    if alg._tensor is None:
        alg._tensor = TensorSquare(alg)
    return alg._tensor


def bar(alg: GradedF2Algebra, u: CohomologyClass) -> TensorClass:
    return tensor_square(alg).bar(u)


# -- one-call pipeline -------------------------------------------------------


def small_cover_algebra(
    p: SimplePolytopeCombinatorics,
    lam: CharacteristicFunction,
    top: int | None = None,
    force_generic: bool = False,
    check: bool = True,
):
    """(presentation, reduced presentation, algebra) for one input."""
    pres = build_presentation(p, lam, check=check)
    red = reduce_presentation(pres)
    alg = graded_basis(red, top=top, force_generic=force_generic)
    return pres, red, alg
