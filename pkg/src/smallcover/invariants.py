"""Certified bounds for category- and complexity-type invariants.

Everything here is non-normalized: cat(point) = 1, TC(point) = 1.

Lower bounds come from products in the cohomology ring and its tensor
square; upper bounds from dimension counts and known product formulas.
A bound is only ever reported together with the rule that produced it,
and searches that stop on a budget say so instead of pretending the
search space was exhausted.

The two-factor case split mirrors the arithmetic of binomial
coefficients mod 2: writing S for the powers of two (1 included) and
r(n) for the bit length of n, a product of bars of length 2^{r(n)} - 1
survives in a single projective factor, and suitable twists push the
product further.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass
from importlib import resources

from .charfun import BottMatrix, CharacteristicFunction, is_projective_product
from .cohomology import (
    GradedF2Algebra,
    ReducedPresentation,
    TensorClass,
    TensorSquare,
    small_cover_algebra,
    tensor_square,
)
from .complexes import SimplePolytopeCombinatorics
from .f2linalg import F2Matrix, kernel_basis

Monomial = tuple[int, ...]

DEFAULT_BUDGET = 200_000


def r_of(n: int) -> int:
    """Unique r with 2^{r-1} <= n < 2^r."""
    if n < 1:
        raise ValueError("positive integers only")
    return n.bit_length()


def in_S(n: int) -> bool:
    """Whether n is a power of two (1 counts)."""
    return n >= 1 and (n & (n - 1)) == 0


def cup_length(alg: GradedF2Algebra) -> int:
    """Longest nonzero product of positive-degree classes.

    The basis consists of monomials in degree-one generators, so any
    degree with a nonzero graded piece is witnessed by a product of
    that many generators; the cup length is just the top nonvanishing
    degree.
    """
    top = 0
    for d in range(1, alg.top_degree + 1):
        if alg.dim(d):
            top = d
    return top


# -- products of zero divisors ----------------------------------------------


@dataclass(frozen=True)
class CertFactor:
    label: str
    power: int


@dataclass(frozen=True)
class Certificate:
    """A nonzero product of tensor-square classes, with one surviving
    basis term recorded as the witness."""

    factors: tuple[CertFactor, ...]
    witness: tuple[Monomial, Monomial] | None


@dataclass(frozen=True)
class ZclResult:
    value: int
    certificate: Certificate | None
    complete: bool
    nodes: int

    def __int__(self) -> int:
        return self.value


def witness_pair(t: TensorClass) -> tuple[Monomial, Monomial] | None:
    """Pick one basis term of a tensor class as THE witness.

    Preference order: balanced degree split first, left degree low on
    ties, then the lexicographically largest left monomial, then right.
    """
    if t.is_zero:
        return None
    alg = t.square.algebra
    best = None
    best_key = None
    for d1, i1, d2, i2 in t.terms:
        b1 = alg.basis(d1)
        b2 = alg.basis(d2)
        key = (
            abs(d1 - d2),
            d1,
            len(b1) - 1 - i1,
            len(b2) - 1 - i2,
        )
        if best_key is None or key < best_key:
            best_key = key
            best = (b1[i1], b2[i2])
    return best


def _bfs_products(
    sq: TensorSquare,
    factors: list[TensorClass],
    labels: list[str],
    cap: int,
    budget: int,
):
    """Breadth-first search over products prod_j f_j^{c_j}.

    The zero set is upward closed, so only nonzero products are kept
    on the frontier.  Exponent vectors are extended at or after their
    last raised index, which enumerates each multiset exactly once.
    Returns (level, vector, class, complete, nodes)."""
    t = len(factors)
    zero_vec = (0,) * t
    frontier: dict[tuple[int, ...], TensorClass] = {zero_vec: sq.one()}
    starts = {zero_vec: 0}
    best_level = 0
    best_vec = zero_vec
    best_cls = sq.one()
    nodes = 0
    complete = True
    level = 0
    while frontier:
        nxt: dict[tuple[int, ...], TensorClass] = {}
        nxt_starts: dict[tuple[int, ...], int] = {}
        for vec, cls in frontier.items():
            for j in range(starts[vec], t):
                if vec[j] >= cap:
                    continue
                nv = vec[:j] + (vec[j] + 1,) + vec[j + 1 :]
                if nv in nxt:
                    continue
                if nodes >= budget:
                    complete = False
                    break
                nodes += 1
                prod = sq.multiply(cls, factors[j])
                if not prod.is_zero:
                    nxt[nv] = prod
                    nxt_starts[nv] = j
            if not complete:
                break
        if not nxt:
            break
        level += 1
        vec = min(nxt)
        best_level, best_vec, best_cls = level, vec, nxt[vec]
        if not complete:
            break
        frontier = nxt
        starts = nxt_starts
    return best_level, best_vec, best_cls, complete, nodes


def _bar_class(sq: TensorSquare, var_mask: int) -> TensorClass:
    """bar of the sum of the variables in var_mask.

    Variables and degree-one basis positions differ (the basis is in
    ascending tuple order, which lists y_m first), so go through the
    coordinate extraction rather than wiring indices directly."""
    alg = sq.algebra
    m = alg.num_vars
    monos = []
    bits = var_mask
    while bits:
        low = bits & -bits
        j = low.bit_length() - 1
        bits ^= low
        monos.append(tuple(1 if k == j else 0 for k in range(m)))
    u = alg.class_from_polynomial(monos)
    terms = set()
    for i in u.coords.support():
        terms.add((0, 0, 1, i))
        terms.add((1, i, 0, 0))
    return TensorClass(sq, 1, frozenset(terms))


def _norm_class(sq: TensorSquare, d: int, i: int) -> TensorClass:
    return TensorClass(sq, d, frozenset({(0, 0, d, i), (d, i, 0, 0)}))


def _linear_label(mask: int) -> str:
    parts = []
    bits = mask
    while bits:
        low = bits & -bits
        parts.append(f"y{low.bit_length()}")
        bits ^= low
    return "bar(" + "+".join(parts) + ")"


def _kernel_factors(sq: TensorSquare, max_degree: int):
    """Basis of the multiplication kernel, degree by degree."""
    alg = sq.algebra
    factors = []
    labels = []
    for d in range(1, max_degree + 1):
        pairs = []
        for d1 in range(d + 1):
            d2 = d - d1
            for i1 in range(alg.dim(d1)):
                for i2 in range(alg.dim(d2)):
                    pairs.append((d1, i1, d2, i2))
        if not pairs:
            continue
        width = alg.dim(d)
        rows = []
        for d1, i1, d2, i2 in pairs:
            bits, _ = sq._pair_product(d1, i1, d2, i2)
            rows.append(bits)
        mat = F2Matrix.from_row_bits(rows, width).transpose()
        for k, vec in enumerate(kernel_basis(mat)):
            terms = frozenset(pairs[i] for i in vec.support())
            factors.append(TensorClass(sq, d, terms))
            labels.append(f"ker{d}[{k + 1}]")
    return factors, labels


def _strategy_factors(sq: TensorSquare, strategy: str, norms_only: bool):
    alg = sq.algebra
    m = alg.num_vars
    if strategy == "generators":
        factors = [_bar_class(sq, 1 << i) for i in range(m)]
        labels = [f"bar(y{i + 1})" for i in range(m)]
    elif strategy == "linear":
        factors = [_bar_class(sq, mask) for mask in range(1, 1 << m)]
        labels = [_linear_label(mask) for mask in range(1, 1 << m)]
    elif strategy == "full":
        if norms_only:
            factors = []
            labels = []
            for d in range(1, alg.top_degree + 1):
                for i, mono in enumerate(alg.basis(d)):
                    factors.append(_norm_class(sq, d, i))
                    labels.append(f"norm[{d},{i + 1}]")
        else:
            factors, labels = _kernel_factors(sq, alg.top_degree)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return factors, labels


def _product_search(
    alg: GradedF2Algebra,
    strategy: str,
    exponent_cap: int | None,
    budget: int | None,
    norms_only: bool,
) -> ZclResult:
    sq = tensor_square(alg)
    factors, labels = _strategy_factors(sq, strategy, norms_only)
    keep = [(f, l) for f, l in zip(factors, labels) if not f.is_zero]
    if not keep:
        return ZclResult(0, None, True, 0)
    factors = [f for f, _ in keep]
    labels = [l for _, l in keep]
    cap = exponent_cap if exponent_cap is not None else 2 * alg.top_degree
    bud = budget if budget is not None else DEFAULT_BUDGET
    level, vec, cls, complete, nodes = _bfs_products(
        sq, factors, labels, cap, bud
    )
    if level == 0:
        return ZclResult(0, None, complete, nodes)
    cert = Certificate(
        factors=tuple(
            CertFactor(labels[j], c) for j, c in enumerate(vec) if c
        ),
        witness=witness_pair(cls),
    )
    return ZclResult(level, cert, complete, nodes)


def zcl_lower(
    alg: GradedF2Algebra,
    strategy: str = "generators",
    exponent_cap: int | None = None,
    budget: int | None = None,
) -> ZclResult:
    """Longest nonzero product of zero divisors found by the chosen
    strategy.  Always a lower bound for the true zero-divisor cup
    length; it is the exact value over the chosen factor set when
    ``complete`` is set."""
    return _product_search(alg, strategy, exponent_cap, budget, False)


def norm_cl(
    alg: GradedF2Algebra,
    strategy: str = "generators",
    exponent_cap: int | None = None,
    budget: int | None = None,
) -> ZclResult:
    """Like :func:`zcl_lower` but restricted to norm elements
    u (x) 1 + 1 (x) u, the zero divisors relevant to the symmetric
    invariant."""
    return _product_search(alg, strategy, exponent_cap, budget, True)


# -- two-factor case split ---------------------------------------------------


@dataclass(frozen=True)
class TwoFactorCase:
    case: int
    bound: int  # lower bound for TC, i.e. asserted zcl + 1 >= bound


def classify_two_factor(n1: int, n2: int) -> tuple[TwoFactorCase, ...]:
    """Applicable twisted-product cases for a nontrivial bundle with
    fiber dimensions (n1, n2).  Several hypotheses can hold at once;
    every returned bound is asserted."""
    out = []
    r = r_of(n1 + n2)
    if in_S(n2) and n2 > n1:
        out.append(TwoFactorCase(1, (1 << r_of(n1)) + (1 << r_of(n2)) - 1))
    if in_S(n2) and n1 % n2 == 0:
        out.append(TwoFactorCase(2, 1 << r))
    if n2 >= 2 and in_S(n2 - 1) and n2 > n1 + 1:
        out.append(TwoFactorCase(3, 1 << r))
    if n2 >= 3 and in_S(n2 - 2) and n2 > n1 + 2:
        out.append(TwoFactorCase(4, 1 << r))
    return tuple(out)


# -- ring comparison against the untwisted product ---------------------------


def _invertible_matrices(m: int):
    cols = list(range(1, 1 << m))
    for combo in itertools.product(cols, repeat=m):
        # quick rank check by elimination
        pivots: dict[int, int] = {}
        ok = True
        for c in combo:
            v = c
            while v:
                low = v & -v
                hit = pivots.get(low)
                if hit is None:
                    pivots[low] = v
                    break
                v ^= hit
            else:
                ok = False
                break
        if ok:
            yield combo


def _substitute(mono: Monomial, images: tuple[int, ...], m: int) -> frozenset:
    """Expand prod_j (sum of y_k in images[j])^{e_j} over F2."""
    acc = {(0,) * m: 1}
    for j, e in enumerate(mono):
        for _ in range(e):
            nxt: dict[Monomial, int] = {}
            bits0 = images[j]
            for t in acc:
                bits = bits0
                while bits:
                    low = bits & -bits
                    k = low.bit_length() - 1
                    bits ^= low
                    lst = list(t)
                    lst[k] += 1
                    key = tuple(lst)
                    if key in nxt:
                        del nxt[key]
                    else:
                        nxt[key] = 1
            acc = nxt
            if not acc:
                return frozenset()
    return frozenset(acc)


def ring_isomorphic_to_projective_product(
    alg_or_red, dims
) -> bool:
    """Whether the ring is carried onto Z2[y]/(y_j^{n_j+1}) by some
    linear substitution of the generators.

    Sufficient test for graded rings generated in degree one with the
    same graded dimensions: a substitution works iff it sends every
    defining relation into the target ideal.
    """
    if isinstance(alg_or_red, GradedF2Algebra):
        relations = alg_or_red.relations
        m = alg_or_red.num_vars
    else:
        relations = alg_or_red.generators
        m = alg_or_red.num_vars
    dims = tuple(dims)
    if len(dims) != m:
        raise ValueError("factor count does not match variable count")
    n = sum(dims)
    target = GradedF2Algebra(
        num_vars=m,
        top_degree=n,
        relations=[
            {tuple((dims[j] + 1) if k == j else 0 for k in range(m))}
            for j in range(m)
        ],
    )
    for images in _invertible_matrices(m):
        good = True
        for g in relations:
            parity: dict[Monomial, int] = {}
            for mono in g:
                for term in _substitute(mono, images, m):
                    if term in parity:
                        del parity[term]
                    else:
                        parity[term] = 1
            if parity:
                cls = target.class_from_polynomial(list(parity))
                if not cls.is_zero:
                    good = False
                    break
        if good:
            return True
    return False


# -- external values ---------------------------------------------------------


@functools.lru_cache(maxsize=1)
def load_external_tc():
    """Literature values: exact TC of real projective spaces and of a
    handful of specific manifolds.  Citations live in the data file."""
    text = (
        resources.files("smallcover")
        .joinpath("data/external_tc.json")
        .read_text()
    )
    raw = json.loads(text)
    rp = {int(k): int(v) for k, v in raw["rp_exact_tc"].items()}
    manifolds = {}
    for entry in raw.get("manifolds", []):
        key = (
            tuple(entry["dims"]),
            tuple(int(b) for b in entry["lower_blocks"]),
        )
        manifolds[key] = (int(entry["tc"]), entry.get("source", ""))
    return rp, manifolds


def external_exact_tc(b: BottMatrix) -> tuple[int, str] | None:
    rp, manifolds = load_external_tc()
    return manifolds.get((b.dims, b.lower_blocks()))


def rp_product_tc(
    dims,
    exponent_cap: int | None = None,
    budget: int | None = None,
) -> tuple[int, int, str]:
    """(lo, hi, rule) for TC of a product of projective spaces.

    Exact when all factors are parallelizable (dimension 1, 3 or 7)
    or all factor dimensions are powers of two with tabulated TC;
    otherwise an interval from the zero-divisor search and the product
    upper bound."""
    dims = tuple(int(d) for d in dims)
    n = sum(dims)
    m = len(dims)
    rp, _ = load_external_tc()
    if all(d in (1, 3, 7) for d in dims):
        return (n + 1, n + 1, "parallelizable-product")
    if all(in_S(d) and d in rp for d in dims):
        v = sum(rp[d] for d in dims) - (m - 1)
        return (v, v, "power-of-two-product")
    target = GradedF2Algebra(
        num_vars=m,
        top_degree=n,
        relations=[
            {tuple((dims[j] + 1) if k == j else 0 for k in range(m))}
            for j in range(m)
        ],
    )
    z = zcl_lower(target, "generators", exponent_cap, budget)
    lo = max(n + 1, z.value + 1)
    hi = min(2 * n + 1, sum(rp.get(d, 2 * d + 1) for d in dims) - (m - 1))
    return (lo, hi, "zcl-and-product-upper")


# -- assembled report ---------------------------------------------------------


@dataclass(frozen=True)
class ReportEntry:
    """One invariant with certified bounds.  lo == hi means exact;
    lo is None means the rule set cannot say anything for this input
    (the note explains what is missing)."""

    name: str
    lo: int | None
    hi: int | None
    method: str
    note: str | None = None

    @property
    def exact(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    @property
    def available(self) -> bool:
        return self.lo is not None


@dataclass(frozen=True)
class BoundsReport:
    dim: int
    facet_count: int
    vertex_count: int
    product_dims: tuple[int, ...] | None
    entries: tuple[ReportEntry, ...]
    zcl: ZclResult
    norm: ZclResult

    def entry(self, name: str) -> ReportEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def projective_product_dims(
    p: SimplePolytopeCombinatorics,
    red: ReducedPresentation,
    bott: BottMatrix | None = None,
) -> tuple[int, ...] | None:
    """Factor dimensions when the input is literally a product of
    projective spaces: an untwisted matrix, or a characteristic
    function whose reduction substitutes y_j for every facet of
    factor j.  Conservative by design; a disguised product just
    keeps its interval bounds."""
    if p.product_dims is None:
        return None
    if bott is not None:
        return p.product_dims if is_projective_product(bott) else None
    n = p.dim
    m = len(p.product_dims)
    if red.survivors != tuple(range(n, n + m)):
        return None
    sub = red.substitution_map()
    off = 0
    for j, nj in enumerate(p.product_dims):
        for k in range(nj):
            if sub.get(off + k) != 1 << j:
                return None
        off += nj
    return p.product_dims


def bounds_report(
    p: SimplePolytopeCombinatorics,
    lam: CharacteristicFunction,
    bott: BottMatrix | None = None,
    strategy: str = "generators",
    exponent_cap: int | None = None,
    budget: int | None = None,
    assert_rz_simply_connected: bool = False,
    force_generic: bool = False,
) -> BoundsReport:
    """Compute every supported invariant for one small cover."""
    pres, red, alg = small_cover_algebra(p, lam, force_generic=force_generic)
    n = p.dim
    z = zcl_lower(alg, strategy, exponent_cap, budget)
    nm = norm_cl(alg, strategy, exponent_cap, budget)
    entries = []

    cl = cup_length(alg)
    entries.append(
        ReportEntry("cat", cl + 1, n + 1, "cup-length-and-dimension")
    )

    entries.append(
        ReportEntry("cat_eq", p.vertex_count(), p.vertex_count(),
                    "fixed-point-count")
    )

    # TC: zero divisors from below, dimension from above, with exact
    # product rules when the manifold splits off projective factors
    rp_dims = projective_product_dims(p, red, bott)
    tc_note = None
    external = external_exact_tc(bott) if bott is not None else None
    if external is not None:
        tc_note = f"literature value TC = {external[0]} ({external[1]})"
    if rp_dims is not None:
        lo, hi, rule = rp_product_tc(rp_dims, exponent_cap, budget)
        lo = max(lo, z.value + 1)
        entries.append(ReportEntry("tc", lo, hi, rule, tc_note))
    else:
        lo = max(n + 1, z.value + 1)
        hi = 2 * n + 1
        entries.append(
            ReportEntry("tc", lo, hi, "zcl-and-dimension", tc_note)
        )

    tc_entry = entries[-1]
    tcs_lo = max(tc_entry.lo, nm.value + 2)
    tcs_hi = 2 * n + 1
    entries.append(
        ReportEntry("tcs", tcs_lo, tcs_hi, "norm-length-and-dimension")
    )

    # cat of the quotient by the free involution on the real
    # moment-angle manifold: needs that manifold simply connected,
    # which holds automatically over a product of simplices
    if p.is_product_of_simplices:
        entries.append(
            ReportEntry("cat1", n + 1, n + 1, "sphere-product-cover")
        )
    elif assert_rz_simply_connected:
        entries.append(
            ReportEntry("cat1", n + 1, n + 1, "asserted-simply-connected")
        )
    else:
        entries.append(
            ReportEntry(
                "cat1", None, None, "unavailable",
                "needs a simply connected real moment-angle manifold; "
                "rerun with the assertion flag if that is known",
            )
        )

    cat1 = entries[-1]
    if cat1.available:
        uppers = [tc_entry.hi]
        if tc_entry.exact:
            uppers.append(tc_entry.lo)
        if external is not None:
            uppers.append(external[0])
        tcd_lo = cat1.lo
        tcd_hi = min(uppers)
        method = "between-cat1-and-tc"
        if rp_dims is not None and all(d in (1, 3, 7) for d in rp_dims):
            tcd_lo = tcd_hi = n + 1
            method = "parallelizable-product"
        entries.append(ReportEntry("tcd", tcd_lo, tcd_hi, method))
    else:
        entries.append(
            ReportEntry(
                "tcd", None, None, "unavailable",
                "lower rule waits on cat1",
            )
        )

    return BoundsReport(
        dim=n,
        facet_count=p.facet_count,
        vertex_count=p.vertex_count(),
        product_dims=p.product_dims,
        entries=tuple(entries),
        zcl=z,
        norm=nm,
    )
