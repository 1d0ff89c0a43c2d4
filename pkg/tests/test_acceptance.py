"""End-to-end acceptance checks: every published value the package is
expected to reproduce, each with its runtime budget on one core."""

import time

from smallcover.charfun import BottMatrix, bott_to_characteristic
from smallcover.cohomology import (
    bar,
    small_cover_algebra,
    tensor_square,
)
from smallcover.complexes import equivariant_cat_rzk, product_of_simplices
from smallcover.invariants import bounds_report, r_of, witness_pair
from smallcover.repro import (
    M3_100_EXPANSION,
    M3_101_WITNESS,
    M4_CASES,
    TWO_FACTOR_RING_PRODUCTS,
    chain_lower_blocks,
    oracle_sweep,
    structural_sweep,
    two_factor_sweep,
)


def tower(dims, lower):
    b = BottMatrix.from_lower_blocks(list(dims), list(lower))
    p = product_of_simplices(list(dims))
    return p, b, bott_to_characteristic(b)


def test_criterion_1_projective_space_rings():
    t0 = time.monotonic()
    for n in range(1, 9):
        p, b, lam = tower([n], [])
        pres, red, alg = small_cover_algebra(p, lam)
        assert alg.dims() == (1,) * (n + 1)
        y = alg.generator(0)
        power = alg.one()
        for _ in range(n):
            power = power * y
        assert not power.is_zero
        assert (power * y).is_zero
    assert time.monotonic() - t0 < 1.0


def test_criterion_2_tower_100():
    t0 = time.monotonic()
    p, b, lam = tower([1, 1, 1], [1, 0, 0])
    pres, red, alg = small_cover_algebra(p, lam)
    sq = tensor_square(alg)
    a2 = bar(alg, alg.generator(1))
    a3 = bar(alg, alg.generator(2))
    prod = sq.multiply(sq.power(a2, 3), a3)
    assert frozenset(prod.monomial_pairs()) == M3_100_EXPANSION
    rep = bounds_report(p, lam, bott=b)
    assert rep.zcl.value >= 4
    tc = rep.entry("tc")
    assert (tc.lo, tc.hi) == (5, 7)
    assert time.monotonic() - t0 < 1.0


def test_criterion_3_tower_101():
    t0 = time.monotonic()
    p, b, lam = tower([1, 1, 1], [1, 0, 1])
    pres, red, alg = small_cover_algebra(p, lam)
    sq = tensor_square(alg)
    a2 = bar(alg, alg.generator(1))
    a3 = bar(alg, alg.generator(2))
    prod = sq.multiply(sq.power(a2, 2), sq.power(a3, 3))
    assert not prod.is_zero
    assert M3_101_WITNESS in set(prod.monomial_pairs())
    rep = bounds_report(p, lam, bott=b)
    tc = rep.entry("tc")
    tcs = rep.entry("tcs")
    assert (tc.lo, tc.hi) == (6, 7)
    assert tcs.exact and tcs.lo == 7
    assert time.monotonic() - t0 < 1.0


def test_criterion_4_dim_four_towers():
    t0 = time.monotonic()
    for lower, expected_witness in M4_CASES:
        p, b, lam = tower([1, 1, 1, 1], list(lower))
        pres, red, alg = small_cover_algebra(p, lam)
        sq = tensor_square(alg)
        a2 = bar(alg, alg.generator(1))
        a3 = bar(alg, alg.generator(2))
        a4 = bar(alg, alg.generator(3))
        prod = sq.multiply(sq.multiply(a2, sq.power(a3, 3)), sq.power(a4, 3))
        assert not prod.is_zero
        assert witness_pair(prod) == expected_witness
        rep = bounds_report(p, lam, bott=b)
        tc = rep.entry("tc")
        tcs = rep.entry("tcs")
        assert (tc.lo, tc.hi) == (8, 9)
        assert tcs.exact and tcs.lo == 9
    assert time.monotonic() - t0 < 5.0


def test_criterion_5_chain_towers():
    t0 = time.monotonic()
    for n in range(3, 7):
        p, b, lam = tower([1] * n, chain_lower_blocks(n))
        pres, red, alg = small_cover_algebra(p, lam)
        for j in range(1, n):
            left = [0] * n
            left[j - 1] = 1
            left[j] = 1
            right = [0] * n
            right[j] = 2
            lc = alg.monomial_class(tuple(left))
            rc = alg.monomial_class(tuple(right))
            assert not lc.is_zero
            assert lc.coords == rc.coords
        top = [0] * n
        top[n - 1] = n
        assert alg.monomial_nonzero(tuple(top))
        rep = bounds_report(p, lam, bott=b)
        r = r_of(n)
        assert rep.zcl.value >= 2**r - 1
        tc = rep.entry("tc")
        assert tc.lo >= 2**r
        if n == 4:
            assert (tc.lo, tc.hi) == (8, 9)
    assert time.monotonic() - t0 < 5.0


def test_criterion_6_two_factor_sweep():
    t0 = time.monotonic()
    records = two_factor_sweep(max_total=6)
    assert records, "sweep found no towers"
    misses = {(r.dims, r.lower_blocks) for r in records if not r.meets_bound}
    for r in records:
        assert r.meets_bound or r.ring_product, (r.dims, r.lower_blocks)
    assert misses == TWO_FACTOR_RING_PRODUCTS
    assert time.monotonic() - t0 < 20.0


def test_criterion_7_product_values():
    t0 = time.monotonic()
    p, b, lam = tower([1, 3], [0])
    rep = bounds_report(p, lam, bott=b)
    assert rep.entry("tc").exact and rep.entry("tc").lo == 5
    assert rep.entry("tcd").exact and rep.entry("tcd").lo == 5
    p, b, lam = tower([2, 4], [0])
    rep = bounds_report(p, lam, bott=b)
    assert rep.entry("tc").exact and rep.entry("tc").lo == 11
    p, b, lam = tower([1], [])
    rep = bounds_report(p, lam, bott=b)
    assert rep.entry("tcs").exact and rep.entry("tcs").lo == 3
    assert time.monotonic() - t0 < 1.0


def test_criterion_8_structural_sweep():
    t0 = time.monotonic()
    res = structural_sweep(max_total=6)
    assert res.families == 63
    assert res.matrices == 78184
    assert res.ok, res.failures[:5]
    assert time.monotonic() - t0 < 30.0


def test_criterion_9_equivariant_category():
    t0 = time.monotonic()
    for dims, expected in [([3], 4), ([1, 1], 4), ([1, 1, 1], 8)]:
        p = product_of_simplices(dims)
        assert equivariant_cat_rzk(p.dual) == expected
        m = len(dims)
        b = BottMatrix.from_lower_blocks(dims, [0] * (m * (m - 1) // 2))
        lam = bott_to_characteristic(b)
        rep = bounds_report(p, lam, bott=b)
        cat_eq = rep.entry("cat_eq")
        assert cat_eq.exact and cat_eq.lo == p.vertex_count() == expected
    assert time.monotonic() - t0 < 1.0


def test_criterion_10_oracle_agreement():
    t0 = time.monotonic()
    count, mismatches = oracle_sweep()
    assert count == 91
    assert mismatches == []
    assert time.monotonic() - t0 < 10.0
