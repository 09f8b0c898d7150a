from math import factorial
import time

import pytest
from hypothesis import given, settings, strategies as st

from peterson_schubert.constants import (
    b_C_consecutive,
    b_consecutive,
    b_general,
    b_ordinary,
    b_product_of_blocks,
    b_union_consecutive,
    expand_product,
    multinomial,
    nonvanishing,
    ordinary_consecutive_closed_form,
)
from peterson_schubert.monomial import TMonomial
from peterson_schubert.oracle import localize_product
from peterson_schubert.restriction import restrict
from peterson_schubert.subsets import SubsetMask

N = 7
subset = st.sets(st.integers(1, N - 1)).map(lambda s: SubsetMask.of(s, N))


def interval(t, h):
    return set(range(t, h + 1))


def test_multinomial():
    assert multinomial(5, 2, 1) == 5 * 4 * 3 // 2
    assert multinomial(3, 4) == 0
    assert multinomial(3, -1) == 0


@pytest.mark.parametrize("A, B, C, expected", [
    ((1, 2), (2, 4), (1, 4), TMonomial(12, 1)),
    ((1, 4), (4, 5), (1, 6), TMonomial(10, 0)),
    ((1, 5), (4, 5), (1, 6), TMonomial(40, 1)),
    ((1, 4), (4, 5), (1, 5), TMonomial(20, 1)),
    ((2, 3), (1, 1), (4, 5), TMonomial()),
])
def test_consecutive_values(A, B, C, expected):
    assert b_consecutive(A, B, C) == expected
    assert b_general(interval(*A), interval(*B), interval(*C)) == expected


def test_union_consecutive_example():
    # blocks {1,2}, {4,5} of A together with B = [2,4]
    assert b_union_consecutive({1, 2, 4, 5}, {2, 3, 4}, (1, 6)) == TMonomial(280, 1)
    assert b_general({1, 2, 4, 5}, {2, 3, 4}, interval(1, 6)) == TMonomial(280, 1)


def test_c_consecutive_and_nested_cases():
    assert b_C_consecutive({1, 3}, {2}, (1, 3)) == TMonomial(6, 0)
    assert b_C_consecutive({1, 3}, {1, 3}, (1, 3)) == TMonomial(12, 1)
    assert b_general(interval(1, 3), {2}, interval(1, 3)) == TMonomial(4, 1)


def test_product_of_blocks_matches_iterated_product():
    # p_{[1,2]} p_{[4,5]} has the single top term p_{[1,5]} with coefficient C(4,2)
    assert b_product_of_blocks([(1, 2), (4, 5)], (1, 5)) == b_general({1, 2}, {4, 5}, interval(1, 5))


def test_empty_operand_is_unit():
    assert b_general({1}, set(), {1}) == TMonomial(1, 0)
    assert b_general(set(), {2}, {2}) == TMonomial(1, 0)
    assert b_general(set(), {2}, {2, 3}) == TMonomial()
    assert {str(C): str(v) for C, v in expand_product(set(), {2}, 4).items()} == {"2": "1"}


def test_expansion_of_divisor_square():
    out = {str(C): str(v) for C, v in expand_product({1}, {1}, 3).items()}
    assert out == {"1": "1*t^1", "1,2": "1"}


def test_ordinary_example():
    assert b_ordinary({1, 2}, {2, 3, 4}, interval(1, 5)) == 4
    assert ordinary_consecutive_closed_form((1, 2), (2, 4), (1, 5)) == 4


def test_worked_example_is_fast():
    A, B, C = {1, 2}, {2, 3, 4}, {1, 2, 3, 4}
    start = time.perf_counter()
    for _ in range(100):
        b_general(A, B, C)
    assert (time.perf_counter() - start) / 100 < 1e-3


@settings(max_examples=200, deadline=None)
@given(subset, subset, subset)
def test_commutative_graded_and_supported(A, B, C):
    v = b_general(A, B, C)
    assert v == b_general(B, A, C)
    if v:
        assert v.power == len(A) + len(B) - len(C)
        assert A.issubset(C) and B.issubset(C)
    assert bool(v) == nonvanishing(A, B, C)


@settings(max_examples=60, deadline=None)
@given(subset, subset)
def test_expansion_matches_oracle(A, B):
    assert expand_product(A, B, N) == localize_product(A, B, N)


@settings(max_examples=100, deadline=None)
@given(subset, subset, subset)
def test_localization_identity_at_fixed_point(A, B, D):
    # (p_A p_B)|_{w_D} = sum_C b^C p_C|_{w_D}
    total = TMonomial()
    for C, v in expand_product(A, B, N).items():
        total = total + v * restrict(C, D)
    assert total == restrict(A, D) * restrict(B, D)


@settings(max_examples=100, deadline=None)
@given(st.data(), subset)
def test_nested_conversion(data, C):
    ta = data.draw(st.integers(1, N - 1))
    ha = data.draw(st.integers(ta, N - 1))
    tb = data.draw(st.integers(ta, ha))
    hb = data.draw(st.integers(tb, ha))
    A, B = interval(ta, ha), interval(tb, hb)
    A1 = {a for a in A if a <= hb}
    B1 = {a for a in A if a >= tb}

    def weight(X, Y):
        return factorial(len(X)) * factorial(len(Y))

    assert b_general(A, B, C) * weight(A, B) == b_general(A1, B1, C) * weight(A1, B1)


@given(st.integers(1, 4), st.integers(0, 2), st.integers(1, 4), st.integers(0, 2))
def test_ordinary_closed_form_agrees(ta, la, tb, lb):
    A, B = (ta, ta + la), (tb, tb + lb)
    lo = min(ta, tb)
    size = la + lb + 2
    for tc in range(max(1, lo - size), lo + 1):
        C = (tc, tc + size - 1)
        assert ordinary_consecutive_closed_form(A, B, C) == b_ordinary(interval(*A), interval(*B), interval(*C))


def test_key_form():
    from peterson_schubert.constants import StructureConstantKey

    key = StructureConstantKey.make({1, 2}, {2, 3, 4}, {1, 2, 3, 4, 5}, 6)
    assert b_general(key) == TMonomial(4, 0)
    assert nonvanishing(key)
    assert b_ordinary(key) == 4
    with pytest.raises(TypeError):
        b_general({1}, {1})
