"""Positive formulas for the structure constants b_{A,B}^C of the Peterson
Schubert basis, p_A p_B = sum_C b_{A,B}^C p_C.

The evaluation is layered:

* :func:`b_consecutive` -- A, B, C all consecutive, closed form.
* :func:`b_union_consecutive` -- A u B and C consecutive; chain of closed forms
  over the maximal blocks of A and B sorted by tail.
* :func:`b_C_consecutive` -- only C consecutive; per-component expansion of
  A u B followed by the coefficient of p_C in a product of consecutive classes.
* :func:`b_general` -- arbitrary subsets; product over the blocks of C.

Intermediate consecutive sets are only ever enumerated inside the target block
C: any letter outside C kills the final coefficient by support.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import NamedTuple

from .monomial import ONE, ZERO, TMonomial
from .subsets import (
    ConsecutiveBlock,
    SubsetLike,
    SubsetMask,
    as_subset,
    blocks_of_bits,
    interval_bits,
    members,
)

__all__ = [
    "StructureConstantKey",
    "multinomial",
    "b_consecutive",
    "b_union_consecutive",
    "b_C_consecutive",
    "b_product_of_blocks",
    "b_general",
    "b_general_bits",
    "nonvanishing",
    "expand_product",
    "b_ordinary",
    "ordinary_consecutive_closed_form",
    "clear_caches",
    "memo_snapshot",
    "load_memo",
]

Interval = tuple[int, int]


class StructureConstantKey(NamedTuple):
    A: SubsetMask
    B: SubsetMask
    C: SubsetMask
    n: int

    @classmethod
    def make(cls, A: SubsetLike, B: SubsetLike, C: SubsetLike, n: int) -> "StructureConstantKey":
        return cls(as_subset(A, n), as_subset(B, n), as_subset(C, n), n)


def multinomial(top: int, *parts: int) -> int:
    """top! / (k_1! ... k_r! (top - sum k)!), zero when any argument is negative."""
    rest = top - sum(parts)
    if top < 0 or rest < 0 or any(k < 0 for k in parts):
        return 0
    out = factorial(top) // factorial(rest)
    for k in parts:
        out //= factorial(k)
    return out


def _size(iv: Interval) -> int:
    return iv[1] - iv[0] + 1


@lru_cache(maxsize=None)
def _b_consec(a: Interval, b: Interval, c: Interval) -> TMonomial:
    (ta, ha), (tb, hb), (tc, hc) = a, b, c
    if not (tc <= min(ta, tb) and max(ha, hb) <= hc):
        return ZERO
    d = _size(a) + _size(b) - _size(c)
    if d < 0:
        return ZERO
    coeff = (factorial(d)
             * multinomial(ha - tb + 1, d, ta - tc, hc - hb)
             * multinomial(hb - ta + 1, d, tb - tc, hc - ha))
    return TMonomial(coeff, d) if coeff else ZERO


def b_consecutive(A: ConsecutiveBlock, B: ConsecutiveBlock, C: ConsecutiveBlock) -> TMonomial:
    """b_{A,B}^C for consecutive A, B, C:

        d! * M(H_A - T_B + 1; d, T_A - T_C, H_C - H_B)
           * M(H_B - T_A + 1; d, T_B - T_C, H_C - H_A) * t^d,   d = |A|+|B|-|C|,

    where M is the multinomial.  Zero unless C contains A u B and d >= 0.

    >>> str(b_consecutive((1, 2), (2, 4), (1, 4)))
    '12*t^1'
    """
    return _b_consec(tuple(A), tuple(B), tuple(C))


def _spans(lo: int, hi: int, within: Interval, max_size: int):
    """Consecutive [t, h] with t <= lo, hi <= h, inside ``within``, size <= max_size."""
    tc, hc = within
    for t in range(lo, tc - 1, -1):
        for h in range(hi, hc + 1):
            if h - t + 1 > max_size:
                break
            yield (t, h)


def _chain(blocks: list[Interval], c: Interval) -> TMonomial:
    """Coefficient of p_C in p_{E_1} ... p_{E_v} for blocks sorted by tail whose
    union is consecutive: sum over C_2 ... C_{v-1} of
    b_{E_1,E_2}^{C_2} b_{C_2,E_3}^{C_3} ... b_{C_{v-1},E_v}^C."""
    states: dict[Interval, TMonomial] = {blocks[0]: ONE}
    for e in blocks[1:]:
        grown: dict[Interval, TMonomial] = {}
        for prev, val in states.items():
            lo, hi = min(prev[0], e[0]), max(prev[1], e[1])
            for f in _spans(lo, hi, c, _size(prev) + _size(e)):
                term = _b_consec(prev, e, f)
                if term:
                    grown[f] = grown.get(f, ZERO) + val * term
        states = grown
    return states.get(c, ZERO)


def _sorted_blocks(*masks: int) -> list[Interval]:
    return sorted(iv for m in masks for iv in blocks_of_bits(m))


@lru_cache(maxsize=None)
def _b_union_consec(a: int, b: int, c: Interval) -> TMonomial:
    return _chain(_sorted_blocks(a, b), c)


def _as_interval(C) -> Interval:
    if isinstance(C, tuple) and len(C) == 2 and all(isinstance(x, int) for x in C):
        return (C[0], C[1])
    blocks = blocks_of_bits(as_subset(C).bits)
    if len(blocks) != 1:
        raise ValueError(f"{members(as_subset(C).bits)} is not a consecutive set")
    return blocks[0]


def b_union_consecutive(A: SubsetLike, B: SubsetLike, C) -> TMonomial:
    """b_{A,B}^C when A u B and C are consecutive.

    The maximal blocks of A and of B are relabelled E_1, ..., E_v by increasing
    tail and the chain of consecutive intermediate sets is summed out.

    >>> str(b_union_consecutive({1, 2, 4, 5}, {2, 3, 4}, (1, 6)))
    '280*t^1'
    """
    a, b = as_subset(A).bits, as_subset(B).bits
    if not a or not b:
        raise ValueError("A and B must be nonempty")
    if len(blocks_of_bits(a | b)) != 1:
        raise ValueError("A u B must be consecutive")
    return _b_union_consec(a, b, _as_interval(C))


def _mergeable(e: Interval, f: Interval) -> bool:
    return e[0] <= f[1] + 1 and f[0] <= e[1] + 1


@lru_cache(maxsize=None)
def _b_blocks(es: tuple[Interval, ...], c: Interval) -> TMonomial:
    """Coefficient of p_C in prod p_{E_i} for consecutive E_i and consecutive C."""
    if len(es) == 1:
        return ONE if es[0] == c else ZERO
    pairs = [(min(es[j][0], es[k][0]), j, k)
             for j, k in combinations(range(len(es)), 2) if _mergeable(es[j], es[k])]
    if not pairs:
        # pairwise separated: the product is p of a non-consecutive set
        return ZERO
    _, j, k = min(pairs)
    ej, ek = es[j], es[k]
    rest = [e for i, e in enumerate(es) if i not in (j, k)]
    total = ZERO
    lo, hi = min(ej[0], ek[0]), max(ej[1], ek[1])
    for f in _spans(lo, hi, c, _size(ej) + _size(ek)):
        first = _b_consec(ej, ek, f)
        if first:
            tail = _b_blocks(tuple(sorted(rest + [f])), c)
            if tail:
                total = total + first * tail
    return total


def b_product_of_blocks(blocks, C) -> TMonomial:
    """b_{E_1,...,E_u}^C: coefficient of p_C in p_{E_1} ... p_{E_u}, all consecutive.

    Merges, at each step, the overlapping-or-adjacent pair with the smallest
    combined tail (ties by position in tail order).
    """
    es = tuple(sorted(_as_interval(e) for e in blocks))
    if not es:
        raise ValueError("need at least one block")
    return _b_blocks(es, _as_interval(C))


@lru_cache(maxsize=None)
def _b_c_consec(a: int, b: int, c: Interval) -> TMonomial:
    cbits = interval_bits(*c)
    if (a | b) & ~cbits:
        return ZERO
    components = blocks_of_bits(a | b)
    # options[i]: list of (E_i, b_{A^i,B^i}^{E_i}) for the i-th component
    options: list[list[tuple[Interval, TMonomial]]] = []
    for t, h in components:
        dbits = interval_bits(t, h)
        ai, bi = a & dbits, b & dbits
        if not ai or not bi:
            # p_{A^i} p_{B^i} = p_{D_i} when one side is empty here
            options.append([((t, h), ONE)])
            continue
        opts = []
        for e in _spans(t, h, c, ai.bit_count() + bi.bit_count()):
            v = _b_union_consec(ai, bi, e)
            if v:
                opts.append((e, v))
        if not opts:
            return ZERO
        options.append(opts)

    total = ZERO

    def walk(i: int, chosen: list[Interval], acc: TMonomial):
        nonlocal total
        if i == len(options):
            tail = _b_blocks(tuple(sorted(chosen)), c)
            if tail:
                total = total + acc * tail
            return
        for e, v in options[i]:
            chosen.append(e)
            walk(i + 1, chosen, acc * v)
            chosen.pop()

    walk(0, [], ONE)
    return total


def b_C_consecutive(A: SubsetLike, B: SubsetLike, C) -> TMonomial:
    """b_{A,B}^C for nonempty A, B and consecutive C.

    With A u B = D_1 u ... u D_u (maximal blocks), A^i = A n D_i, B^i = B n D_i:

        b_{A,B}^C = sum over consecutive E_i containing D_i of
                    (prod_i b_{A^i,B^i}^{E_i}) * b_{E_1,...,E_u}^C.
    """
    a, b = as_subset(A).bits, as_subset(B).bits
    if not a or not b:
        raise ValueError("A and B must be nonempty")
    return _b_c_consec(a, b, _as_interval(C))


def _b_block_or_empty(a: int, b: int, c: Interval) -> TMonomial:
    if not a or not b:
        return ONE if a | b == interval_bits(*c) else ZERO
    return _b_c_consec(a, b, c)


# (a, b, c) -> value; one dict per process, so worker pools never share it
_GENERAL_MEMO: dict[tuple[int, int, int], TMonomial] = {}


def b_general_bits(a: int, b: int, c: int) -> TMonomial:
    key = (a, b, c)
    hit = _GENERAL_MEMO.get(key)
    if hit is None:
        hit = _GENERAL_MEMO[key] = _b_general_uncached(a, b, c)
    return hit


def memo_snapshot() -> list[tuple[int, int, int, int, int]]:
    """The memo as (a, b, c, coeff, power) rows, for persisting between runs."""
    return [(a, b, c, v.coeff, v.power) for (a, b, c), v in _GENERAL_MEMO.items()]


def load_memo(rows) -> int:
    """Seed the memo from :func:`memo_snapshot` rows; returns the number loaded."""
    count = 0
    for a, b, c, coeff, power in rows:
        _GENERAL_MEMO[(int(a), int(b), int(c))] = TMonomial(int(coeff), int(power))
        count += 1
    return count


def _b_general_uncached(a: int, b: int, c: int) -> TMonomial:
    if not a:
        return ONE if b == c else ZERO
    if not b:
        return ONE if a == c else ZERO
    if (a | b) & ~c:
        return ZERO
    out = ONE
    for blk in blocks_of_bits(c):
        cb = interval_bits(*blk)
        out = out * _b_block_or_empty(a & cb, b & cb, blk)
        if not out:
            return ZERO
    return out


def _triple(A, B, C):
    """Accept either (A, B, C) or a single StructureConstantKey."""
    if isinstance(A, StructureConstantKey) and B is None and C is None:
        return A.A, A.B, A.C
    if B is None or C is None:
        raise TypeError("pass A, B, C or a StructureConstantKey")
    return A, B, C


def b_general(A, B=None, C=None) -> TMonomial:
    """b_{A,B}^C for arbitrary subsets (or one StructureConstantKey).

    b_{A,0}^A = b_{0,A}^A = 1; otherwise zero unless A u B is inside C, and
    then the product over the maximal blocks C_k of C of b_{A n C_k, B n C_k}^{C_k}.

    >>> str(b_general({1, 2}, {2, 3, 4}, {1, 2, 3, 4}))
    '12*t^1'
    """
    A, B, C = _triple(A, B, C)
    return b_general_bits(as_subset(A).bits, as_subset(B).bits, as_subset(C).bits)


def nonvanishing(A, B=None, C=None) -> bool:
    """Positivity criterion: A u B inside C and |C_k| <= |C_k n A| + |C_k n B|
    for every maximal block C_k of C."""
    A, B, C = _triple(A, B, C)
    a, b, c = as_subset(A).bits, as_subset(B).bits, as_subset(C).bits
    if not a:
        return b == c
    if not b:
        return a == c
    if (a | b) & ~c:
        return False
    for blk in blocks_of_bits(c):
        cb = interval_bits(*blk)
        if _size(blk) > (a & cb).bit_count() + (b & cb).bit_count():
            return False
    return True


def expand_product(A: SubsetLike, B: SubsetLike, n: int) -> dict[SubsetMask, TMonomial]:
    """All nonzero b_{A,B}^C with C inside {1..n-1}, ordered by (|C|, value).

    >>> {str(C): str(v) for C, v in expand_product({1}, {1}, 3).items()}
    {'1': '1*t^1', '1,2': '1'}
    """
    a, b = as_subset(A, n).bits, as_subset(B, n).bits
    base = a | b
    limit = a.bit_count() + b.bit_count()
    free = members(SubsetMask.full(n).bits & ~base)
    out = {}
    for r in range(0, max(limit - base.bit_count(), 0) + 1):
        for extra in combinations(free, r):
            c = base
            for i in extra:
                c |= 1 << i
            v = b_general_bits(a, b, c)
            if v:
                out[c] = v
    if not a or not b:
        # p_0 = 1: the product is the other class
        out = {c: v for c, v in out.items() if c == base}
    return {SubsetMask(n, c): out[c] for c in sorted(out, key=lambda c: (c.bit_count(), c))}


def b_ordinary(A, B=None, C=None) -> int:
    """Ordinary (non-equivariant) structure constant: the coefficient of
    b_{A,B}^C when |C| = |A| + |B|, else 0."""
    A, B, C = _triple(A, B, C)
    A, B, C = as_subset(A), as_subset(B), as_subset(C)
    if len(C) != len(A) + len(B):
        return 0
    v = b_general(A, B, C)
    assert v.power == 0 or not v
    return v.coeff


def ordinary_consecutive_closed_form(A: ConsecutiveBlock, B: ConsecutiveBlock,
                                     C: ConsecutiveBlock) -> int:
    """Two-binomial form for consecutive A, B, C with A u B in C and
    |C| = |A| + |B| (A taken as the block with the smaller tail)."""
    (ta, ha), (tb, hb), (tc, hc) = tuple(A), tuple(B), tuple(C)
    if ta > tb:
        (ta, ha), (tb, hb) = (tb, hb), (ta, ha)
    if not (tc <= ta and max(ha, hb) <= hc):
        return 0
    if hc - tc + 1 != (ha - ta + 1) + (hb - tb + 1):
        return 0

    def binom(top, k):
        return comb(top, k) if 0 <= k <= top else 0

    return binom(ha - tb + 1, ta - tc) * binom(hb - ta + 1, tb - tc)


def clear_caches() -> None:
    for f in (_b_consec, _b_union_consec, _b_blocks, _b_c_consec):
        f.cache_clear()
    _GENERAL_MEMO.clear()
