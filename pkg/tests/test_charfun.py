import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcover.charfun import (
    BottMatrix,
    BudgetExceededError,
    CharacteristicFunction,
    NoNormalFormError,
    bott_free_bits,
    bott_to_characteristic,
    count_bott,
    enumerate_bott,
    is_projective_product,
    lambda_kernel,
    normalize_bott,
    validate_characteristic,
)
from smallcover.complexes import from_dual_complex, product_of_simplices
from smallcover.f2linalg import F2Vector


def vectors(*bit_patterns, n):
    return tuple(F2Vector.from_bits(b, n) for b in bit_patterns)


small_dims = st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=3)


def bott_towers(dims_strategy=small_dims):
    def pick(dims):
        total = count_bott(tuple(dims))
        return st.integers(min_value=0, max_value=total - 1).map(
            lambda idx: _nth_tower(tuple(dims), idx)
        )

    return dims_strategy.flatmap(pick)


def _nth_tower(dims, idx):
    for k, b in enumerate(enumerate_bott(dims)):
        if k == idx:
            return b
    raise AssertionError("index out of range")


def test_lower_blocks_round_trip():
    b = BottMatrix.from_lower_blocks([1, 1, 1], [1, 0, 1])
    assert b.lower_blocks() == (1, 0, 1)
    assert b.dims == (1, 1, 1)
    # blocks in row-major (k, j) order: (1,0), (2,0), (2,1)
    b2 = BottMatrix.from_lower_blocks([2, 1, 3], [1, 5, 3])
    assert b2.lower_blocks() == (1, 5, 3)


def test_from_lower_blocks_rejects_wrong_count():
    with pytest.raises(ValueError):
        BottMatrix.from_lower_blocks([1, 1], [])
    with pytest.raises(ValueError):
        BottMatrix.from_lower_blocks([1, 1], [1, 1])


def test_from_lower_blocks_rejects_wide_mask():
    # block (1, 0) is a bitmask over the dims[1] = 2 rows of factor 1
    with pytest.raises(ValueError):
        BottMatrix.from_lower_blocks([1, 2], [4])


def test_count_matches_free_bits():
    for dims in [(1,), (1, 1), (1, 2), (2, 1), (1, 1, 1), (2, 2)]:
        assert count_bott(dims) == 2 ** bott_free_bits(dims)


def test_enumerate_bott_distinct_and_normal():
    dims = (1, 1, 1)
    towers = list(enumerate_bott(dims))
    assert len(towers) == count_bott(dims) == 8
    assert len(set(towers)) == 8
    for b in towers:
        assert b.is_normal_form()


def test_enumerate_bott_budget():
    with pytest.raises(BudgetExceededError):
        list(enumerate_bott((1, 1, 1, 1, 1), max_count=4))


def test_is_projective_product():
    assert is_projective_product(BottMatrix.from_lower_blocks([1, 3], [0]))
    assert not is_projective_product(BottMatrix.from_lower_blocks([1, 3], [3]))


def test_projective_space_characteristic():
    p = product_of_simplices([2])
    lam = bott_to_characteristic(BottMatrix.from_lower_blocks([2], []))
    assert lam.facet_count == 3
    assert validate_characteristic(p, lam)


def test_invalid_characteristic_witness():
    # triangle with two parallel vectors on adjacent facets
    p = from_dual_complex(2, 3, [(0, 1), (1, 2), (0, 2)])
    lam = CharacteristicFunction(2, vectors(0b01, 0b01, 0b10, n=2))
    res = validate_characteristic(p, lam)
    assert not res
    assert res.witness == (0, 1)


def test_validation_result_is_truthy_when_ok():
    p = from_dual_complex(2, 3, [(0, 1), (1, 2), (0, 2)])
    lam = CharacteristicFunction(2, vectors(0b01, 0b10, 0b11, n=2))
    res = validate_characteristic(p, lam)
    assert res
    assert res.witness is None


@settings(max_examples=60)
@given(bott_towers())
def test_every_tower_gives_valid_characteristic(b):
    p = product_of_simplices(list(b.dims))
    lam = bott_to_characteristic(b)
    assert lam.facet_count == p.facet_count
    assert validate_characteristic(p, lam)


def test_normalize_identity_on_normal_form():
    b = BottMatrix.from_lower_blocks([1, 1], [1])
    normal, perm = normalize_bott(b)
    assert normal == b
    assert perm == (0, 1)


def test_normalize_reorders_factors():
    b = BottMatrix.from_lower_blocks([1, 1, 1], [1, 1, 0])
    shuffled = b.permuted((2, 0, 1))
    if shuffled.is_normal_form():
        pytest.skip("permutation kept the normal form")
    normal, perm = normalize_bott(shuffled)
    assert normal.is_normal_form()
    assert shuffled.permuted(perm) == normal


def test_kernel_of_projective_characteristic():
    # RP^2: 3 facets, rank-2 vector matrix, kernel rank 1
    lam = bott_to_characteristic(BottMatrix.from_lower_blocks([2], []))
    ker = lambda_kernel(lam)
    assert ker.r == 3
    assert ker.rank == 1
    for v in ker.basis:
        assert v.n == 3


def test_columns_include_unit_diagonal():
    b = BottMatrix.from_lower_blocks([1, 1, 1], [1, 0, 1])
    assert b.column(0).to_tuple() == (1, 1, 0)
    assert b.column(1).to_tuple() == (0, 1, 1)
    assert b.column(2).to_tuple() == (0, 0, 1)
