import pytest
from hypothesis import given, strategies as st

from peterson_schubert.monomial import ONE, ZERO, InternalConsistencyError, TMonomial
from peterson_schubert.subsets import (
    ConsecutiveBlock,
    SubsetMask,
    as_subset,
    decompose,
    format_subset,
    is_consecutive,
    parse_subset,
    staircase_word,
)

subsets_of_7 = st.sets(st.integers(1, 6)).map(lambda s: SubsetMask.of(s, 7))


def test_parse_ranges_and_empty():
    assert list(parse_subset("1,2,4-5", 7)) == [1, 2, 4, 5]
    assert list(parse_subset("", 4)) == []
    assert len(parse_subset(" 2 - 4 ", 5)) == 3


@pytest.mark.parametrize("bad", ["a", "3-1", "1,,2", "-2"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_subset(bad, 5)


def test_out_of_range():
    with pytest.raises(ValueError):
        parse_subset("5", 5)
    with pytest.raises(ValueError):
        SubsetMask(4, 1)  # index 0 is never a member


@given(subsets_of_7)
def test_format_round_trip(A):
    assert parse_subset(format_subset(A), 7) == A


@given(subsets_of_7)
def test_decompose_covers_and_separates(A):
    blocks = decompose(A)
    covered = [i for b in blocks for i in range(b.tail, b.head + 1)]
    assert covered == list(A)
    for left, right in zip(blocks, blocks[1:]):
        assert right.tail > left.head + 1


def test_decompose_example():
    assert decompose({1, 2, 4, 5, 7}) == [(1, 2), (4, 5), (7, 7)]
    assert is_consecutive({3, 4, 5}) and not is_consecutive({1, 3}) and not is_consecutive(set())


def test_staircase_word():
    assert staircase_word({1, 2, 3}) == (1, 2, 3, 1, 2, 1)
    assert staircase_word({1, 2, 4}) == (1, 2, 1, 4)
    assert ConsecutiveBlock(2, 4).size == 3


@given(subsets_of_7, subsets_of_7)
def test_set_algebra(A, B):
    assert set(A | B) == set(A) | set(B)
    assert set(A & B) == set(A) & set(B)
    assert (A & B) <= A
    assert as_subset(list(A), 7) == A


def test_monomial_arithmetic():
    assert TMonomial(3, 2) + TMonomial(4, 2) == TMonomial(7, 2)
    assert TMonomial(3, 2) * TMonomial(2, 1) == TMonomial(6, 3)
    assert TMonomial(12, 3).exact_div(TMonomial(4, 1)) == TMonomial(3, 2)
    assert ZERO + ONE == ONE and TMonomial(0, 5) == ZERO
    assert str(TMonomial(12, 1)) == "12*t^1" and str(TMonomial(4, 0)) == "4"
    assert TMonomial.parse("280*t^1") == TMonomial(280, 1)


@pytest.mark.parametrize("op", [
    lambda: TMonomial(1, 1) + TMonomial(1, 2),
    lambda: TMonomial(1, 1) - TMonomial(2, 1),
    lambda: TMonomial(5, 1).exact_div(TMonomial(2, 0)),
    lambda: TMonomial(-1, 0),
])
def test_monomial_consistency_errors(op):
    with pytest.raises(InternalConsistencyError):
        op()
