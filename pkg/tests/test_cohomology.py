import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcover.charfun import (
    BottMatrix,
    CharacteristicFunction,
    bott_to_characteristic,
    count_bott,
    enumerate_bott,
)
from smallcover.cohomology import (
    bar,
    facet_class,
    fundamental_checks,
    small_cover_algebra,
    tensor_square,
)
from smallcover.complexes import from_dual_complex, product_of_simplices
from smallcover.f2linalg import F2Vector
from smallcover.oracle import brute_force_graded_dims


def tower_algebra(dims, lower, **kw):
    b = BottMatrix.from_lower_blocks(list(dims), list(lower))
    p = product_of_simplices(list(dims))
    lam = bott_to_characteristic(b)
    return small_cover_algebra(p, lam, **kw)


def poincare_product(dims):
    """Graded dims of a product of projective spaces."""
    out = [1]
    for d in dims:
        nxt = [0] * (len(out) + d)
        for i, c in enumerate(out):
            for k in range(d + 1):
                nxt[i + k] += c
        out = nxt
    return tuple(out)


small_tower = (
    st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=3)
    .filter(lambda dims: sum(dims) <= 4)
    .flatmap(
        lambda dims: st.integers(min_value=0, max_value=count_bott(tuple(dims)) - 1).map(
            lambda idx: (tuple(dims), idx)
        )
    )
)


def nth_tower(dims, idx):
    for k, b in enumerate(enumerate_bott(dims)):
        if k == idx:
            return b
    raise AssertionError


# closed-form oracles ----------------------------------------------------


def test_projective_space_rings():
    for n in range(1, 7):
        pres, red, alg = tower_algebra([n], [])
        assert alg.dims() == (1,) * (n + 1)
        assert alg.num_vars == 1
        assert not alg.monomial_class((n,)).is_zero


def test_projective_product_dims_match_poincare_polynomial():
    for dims in [(1, 2), (2, 2), (1, 1, 2), (2, 3)]:
        m = len(dims)
        pres, red, alg = tower_algebra(dims, [0] * (m * (m - 1) // 2))
        assert alg.dims() == poincare_product(dims)


def test_klein_bottle_ring():
    pres, red, alg = tower_algebra([1, 1], [1])
    assert alg.dims() == (1, 2, 1)
    ones = [
        alg.class_from_polynomial(
            ([(1, 0)] if a else []) + ([(0, 1)] if b else [])
        )
        for a, b in [(1, 0), (0, 1), (1, 1)]
    ]
    squares = [u * u for u in ones]
    zero_squares = sum(1 for s in squares if s.is_zero)
    # torus has three square-zero classes in degree one, the twisted
    # ring only one: the rings are not isomorphic
    assert zero_squares == 1


def test_twisted_vs_product_dims_agree():
    # twisting never changes graded dimensions, only products
    for lower in range(2):
        pres, red, alg = tower_algebra([1, 1], [lower])
        assert alg.dims() == (1, 2, 1)


# brute-force reducer agreement ------------------------------------------


@settings(max_examples=50, deadline=None)
@given(small_tower)
def test_graded_dims_match_brute_force(data):
    dims, idx = data
    b = nth_tower(dims, idx)
    p = product_of_simplices(list(dims))
    lam = bott_to_characteristic(b)
    pres, red, alg = small_cover_algebra(p, lam)
    expected = brute_force_graded_dims(red, alg.top_degree)
    assert tuple(alg.dim(d) for d in range(alg.top_degree + 1)) == expected


def test_dual_complex_instance_matches_brute_force():
    square = from_dual_complex(2, 4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    lam = CharacteristicFunction(
        2, tuple(F2Vector.from_bits(b, 2) for b in (1, 2, 1, 2))
    )
    pres, red, alg = small_cover_algebra(square, lam)
    assert alg.dims() == brute_force_graded_dims(red, 2)
    assert alg.dims() == (1, 2, 1)


# ring laws ---------------------------------------------------------------


@pytest.fixture(scope="module")
def medium():
    pres, red, alg = tower_algebra([1, 1, 2], [1, 0, 2])
    return alg


def classes_of(alg, degree, seeds):
    width = alg.dim(degree)
    basis = alg.basis(degree)
    out = []
    for seed in seeds:
        monos = [basis[i] for i in range(width) if (seed >> i) & 1]
        if monos:
            out.append(alg.class_from_polynomial(monos))
        else:
            out.append(alg.zero(degree))
    return out


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=2),
    st.integers(min_value=1, max_value=2),
    st.integers(min_value=0, max_value=255),
    st.integers(min_value=0, max_value=255),
)
def test_cup_commutative(medium, d1, d2, s1, s2):
    (a,) = classes_of(medium, d1, [s1 % (1 << medium.dim(d1))])
    (b,) = classes_of(medium, d2, [s2 % (1 << medium.dim(d2))])
    assert (a * b).coords == (b * a).coords


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=0, max_value=255),
    st.integers(min_value=0, max_value=255),
    st.integers(min_value=0, max_value=255),
)
def test_cup_associative_and_distributive(medium, s1, s2, s3):
    (a,) = classes_of(medium, 1, [s1 % (1 << medium.dim(1))])
    (b,) = classes_of(medium, 1, [s2 % (1 << medium.dim(1))])
    (c,) = classes_of(medium, 1, [s3 % (1 << medium.dim(1))])
    assert ((a * b) * c).coords == (a * (b * c)).coords
    assert (a * (b + c)).coords == (a * b + a * c).coords


def test_unit_and_truncation(medium):
    one = medium.one()
    g = medium.generator(0)
    assert (one * g).coords == g.coords
    deep = g
    for _ in range(medium.top_degree):
        deep = deep * g
    assert deep.is_zero  # degree past the top


def test_mismatched_algebras_rejected(medium):
    pres, red, other = tower_algebra([1, 1], [1])
    with pytest.raises(ValueError):
        medium.cup(medium.one(), other.one())


# box vs generic ----------------------------------------------------------


@settings(max_examples=25, deadline=None)
@given(small_tower)
def test_generic_mode_agrees_with_box(data):
    dims, idx = data
    b = nth_tower(dims, idx)
    p = product_of_simplices(list(dims))
    lam = bott_to_characteristic(b)
    pres, red, fast = small_cover_algebra(p, lam)
    pres2, red2, slow = small_cover_algebra(p, lam, force_generic=True)
    assert fast.dims() == slow.dims()
    for d in range(fast.top_degree + 1):
        assert fast.basis(d) == slow.basis(d)


@settings(max_examples=40, deadline=None)
@given(small_tower, st.data())
def test_monomial_nonzero_matches_class(data, picks):
    dims, idx = data
    b = nth_tower(dims, idx)
    p = product_of_simplices(list(dims))
    lam = bott_to_characteristic(b)
    pres, red, alg = small_cover_algebra(p, lam)
    mono = tuple(
        picks.draw(st.integers(min_value=0, max_value=alg.top_degree))
        for _ in range(alg.num_vars)
    )
    assert alg.monomial_nonzero(mono) == (
        sum(mono) <= alg.top_degree and not alg.monomial_class(mono).is_zero
    )


# duality and parity -------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(small_tower)
def test_fundamental_checks_pass(data):
    dims, idx = data
    b = nth_tower(dims, idx)
    p = product_of_simplices(list(dims))
    lam = bott_to_characteristic(b)
    pres, red, alg = small_cover_algebra(p, lam)
    rep = fundamental_checks(alg, p)
    assert rep.ok, rep.failures
    assert rep.total_dim == p.vertex_count()
    assert rep.top_dim == 1
    dims_vec = alg.dims()
    assert dims_vec == dims_vec[::-1]  # duality symmetry


def test_top_parity_matches_product_coefficient():
    pres, red, alg = tower_algebra([1, 1, 2], [1, 0, 2])
    n = alg.top_degree
    for d in range(n + 1):
        for left in alg.basis(d):
            for right in alg.basis(n - d):
                mono = tuple(a + b for a, b in zip(left, right))
                prod = alg.monomial_class(left) * alg.monomial_class(right)
                assert alg.top_parity(mono) == (0 if prod.is_zero else 1)


def test_top_parity_requires_top_degree():
    pres, red, alg = tower_algebra([1, 1], [1])
    with pytest.raises(ValueError):
        alg.top_parity((1, 0))


# facet classes ------------------------------------------------------------


def test_facet_classes_respect_substitution():
    pres, red, alg = tower_algebra([1, 1, 1], [1, 0, 0])
    # eliminated facet classes are sums of surviving generators; their
    # squares must obey the Stanley-Reisner relations x_i x_{opposite} = 0
    for j in range(3):
        u = facet_class(alg, red, j)
        opposite = facet_class(alg, red, j + 3)
        assert (u * opposite).is_zero


# tensor square ------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=255))
def test_bar_is_a_zero_divisor(medium, seed):
    sq = tensor_square(medium)
    (u,) = classes_of(medium, 1, [seed % (1 << medium.dim(1))])
    t = bar(medium, u)
    assert sq.multiplication_image(t).is_zero


def test_bar_is_linear(medium):
    a = medium.generator(0)
    b = medium.generator(1)
    left = bar(medium, a + b)
    # tensor classes add by symmetric difference of terms
    assert left.terms == (bar(medium, a).terms ^ bar(medium, b).terms)


def test_power_matches_repeated_multiply(medium):
    sq = tensor_square(medium)
    t = bar(medium, medium.generator(1))
    acc = sq.one()
    for e in range(4):
        assert sq.power(t, e).terms == acc.terms
        acc = sq.multiply(acc, t)


def test_from_sides_multiplication_image(medium):
    sq = tensor_square(medium)
    a = medium.generator(0)
    b = medium.generator(2)
    t = sq.from_sides(a, b)
    assert sq.multiplication_image(t).coords == (a * b).coords


def test_tensor_product_is_bilinear(medium):
    sq = tensor_square(medium)
    a, b, c = (medium.generator(j) for j in range(3))
    lhs = sq.multiply(sq.from_sides(a, b), sq.from_sides(medium.one(), c))
    assert sq.multiplication_image(lhs).coords == (a * (b * c)).coords
