"""Closed-form restrictions p_A|_{w_C} of Peterson Schubert classes to the
Peterson fixed points, with alpha_i specialized to t."""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .monomial import ONE, ZERO, TMonomial
from .subsets import ConsecutiveBlock, SubsetLike, as_subset, blocks_of_bits

__all__ = ["restrict_consecutive", "restrict", "self_restrict", "restrict_bits"]


def restrict_consecutive(A: ConsecutiveBlock, D: ConsecutiveBlock) -> TMonomial:
    """p_A restricted to w_D for blocks A inside D.

    The value is C(H_D - T_A + 1, |A|) * (H_A - T_D + 1)! / (T_A - T_D)! * t^|A|:
    the binomial counts occurrences of the increasing word of A inside the
    staircase word of D, the factorial ratio is the product of root values.
    """
    A = ConsecutiveBlock(*A)
    D = ConsecutiveBlock(*D)
    if not D.contains_block(A):
        raise ValueError(f"{A} is not contained in {D}; the restriction vanishes")
    return _restrict_block(A.tail, A.head, D.tail, D.head)


@lru_cache(maxsize=None)
def _restrict_block(ta: int, ha: int, td: int, hd: int) -> TMonomial:
    size = ha - ta + 1
    count = comb(hd - ta + 1, size)
    weight = factorial(ha - td + 1) // factorial(ta - td)
    return TMonomial(count * weight, size)


@lru_cache(maxsize=None)
def restrict_bits(a: int, c: int) -> TMonomial:
    """:func:`restrict` on raw bitmasks."""
    if a & ~c:
        return ZERO
    c_blocks = blocks_of_bits(c)
    out = ONE
    for ta, ha in blocks_of_bits(a):
        # the unique block of C holding this block of A; other blocks of C
        # are non-adjacent and leave the restriction unchanged
        td, hd = next((t, h) for t, h in c_blocks if t <= ta and ha <= h)
        out = out * _restrict_block(ta, ha, td, hd)
    return out


def restrict(A: SubsetLike, C: SubsetLike) -> TMonomial:
    """p_A|_{w_C} for arbitrary subsets; zero unless A is contained in C.

    >>> str(restrict({2, 3}, range(1, 7)))
    '60*t^2'
    """
    return restrict_bits(as_subset(A).bits, as_subset(C).bits)


def self_restrict(A: SubsetLike) -> TMonomial:
    """p_A|_{w_A} = prod over blocks of |A_i|! t^|A_i|; never zero."""
    out = ONE
    for t, h in blocks_of_bits(as_subset(A).bits):
        out = out * TMonomial(factorial(h - t + 1), h - t + 1)
    return out
