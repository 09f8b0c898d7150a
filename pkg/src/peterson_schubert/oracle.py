"""Ground truth by localization.

``subword_restriction`` evaluates the AJS-Billey sum directly: it walks the
staircase word of the fixed point, tracks the permutation of every partial
subword, and weights each chosen letter by the height of its actual root
``s_{i_1}...s_{i_{k-1}}(alpha_{i_k})`` (so alpha_i -> t becomes root height).
Nothing from the closed-form restriction formulas is used.

``localize_product`` recovers the expansion of p_A p_B by triangular
elimination over the fixed points w_D, using only ``subword_restriction``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .monomial import ONE, ZERO, InternalConsistencyError, TMonomial
from .subsets import SubsetLike, SubsetMask, as_subset, members, staircase_word

__all__ = [
    "subword_restriction",
    "subword_restriction_bits",
    "localize_product",
    "root_values",
    "permutation_of_word",
    "coxeter_length",
]

Perm = tuple[int, ...]


def _identity(size: int) -> Perm:
    return tuple(range(1, size + 1))


def _times_simple(p: Perm, i: int) -> Perm:
    """Right multiplication by s_i: swap the entries in positions i, i+1."""
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


def permutation_of_word(word, size: int) -> Perm:
    """One-line notation of s_{w_1} s_{w_2} ... as a permutation of {1..size}."""
    p = _identity(size)
    for i in word:
        p = _times_simple(p, i)
    return p


def coxeter_length(p: Perm) -> int:
    return sum(1 for a, b in combinations(p, 2) if a > b)


def _inverse(p: Perm) -> Perm:
    q = [0] * len(p)
    for pos, val in enumerate(p, 1):
        q[val - 1] = pos
    return tuple(q)


def _compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[x - 1] for x in q)


def root_values(word, size: int | None = None) -> list[int]:
    """Heights of the roots r(k, W) = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}).

    For a reduced word these are positive; alpha_i -> t sends a root of
    height h to h*t.
    """
    word = tuple(word)
    if size is None:
        size = max(word, default=0) + 1
    p = _identity(size)
    out = []
    for i in word:
        # w(alpha_i) = e_{w(i)} - e_{w(i+1)}, height w(i+1) - w(i)
        out.append(p[i] - p[i - 1])
        p = _times_simple(p, i)
    return out


@lru_cache(maxsize=None)
def _weak_prefixes(target: Perm) -> frozenset[Perm]:
    """All u with l(u) + l(u^{-1} target) = l(target): the prefixes of reduced
    words of ``target``."""
    size = len(target)
    total = coxeter_length(target)
    seen = {_identity(size)}
    frontier = [_identity(size)]
    while frontier:
        nxt = []
        for u in frontier:
            for i in range(1, size):
                if u[i - 1] > u[i]:
                    continue
                v = _times_simple(u, i)
                if v in seen:
                    continue
                if coxeter_length(v) + coxeter_length(_compose(_inverse(v), target)) == total:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=None)
def subword_restriction_bits(a: int, c: int) -> TMonomial:
    size = max((a | c).bit_length(), 2)
    word = staircase_word(SubsetMask(size, c))
    letters = members(a)
    target = permutation_of_word(letters, size)
    prefixes = _weak_prefixes(target)

    states: dict[Perm, int] = {_identity(size): 1}
    heights = root_values(word, size)
    for i, h in zip(word, heights):
        if h <= 0:
            raise InternalConsistencyError(f"staircase word {word} is not reduced")
        grown = dict(states)
        for u, weight in states.items():
            if u[i - 1] > u[i]:
                continue  # not length-increasing
            v = _times_simple(u, i)
            if v in prefixes:
                grown[v] = grown.get(v, 0) + weight * h
        states = grown
    total = states.get(target, 0)
    return TMonomial(total, len(letters)) if total else ZERO


def subword_restriction(A: SubsetLike, C: SubsetLike) -> TMonomial:
    """p_A|_{w_C} as the weighted count of subwords of W_C multiplying to v_A.

    >>> str(subword_restriction({1}, {1, 2}))
    '2*t^1'
    """
    return subword_restriction_bits(as_subset(A).bits, as_subset(C).bits)


def _supersets(base: int, universe: int):
    free = members(universe & ~base)
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            bits = base
            for i in extra:
                bits |= 1 << i
            yield bits


def localize_product(A: SubsetLike, B: SubsetLike, n: int) -> dict[SubsetMask, TMonomial]:
    """Expand p_A p_B in the Peterson Schubert basis by solving
    (p_A p_B)|_{w_D} = sum_C b^C p_C|_{w_D} one fixed point at a time.

    Fixed points D are visited by (|D|, numeric value); p_C|_{w_D} = 0 unless
    C is inside D, so every coefficient on the right is already known.
    """
    a = as_subset(A, n).bits
    b = as_subset(B, n).bits
    universe = SubsetMask.full(n).bits
    order = sorted(_supersets(a | b, universe), key=lambda d: (d.bit_count(), d))
    solved: dict[int, TMonomial] = {}
    for d in order:
        rhs = subword_restriction_bits(a, d) * subword_restriction_bits(b, d)
        for c, coeff in solved.items():
            if c & ~d == 0:
                try:
                    rhs = rhs - coeff * subword_restriction_bits(c, d)
                except InternalConsistencyError as exc:
                    raise InternalConsistencyError(
                        f"A={members(a)} B={members(b)} D={members(d)}: {exc}") from exc
        if not rhs:
            continue
        try:
            solved[d] = rhs.exact_div(subword_restriction_bits(d, d))
        except InternalConsistencyError as exc:
            raise InternalConsistencyError(
                f"A={members(a)} B={members(b)} D={members(d)}: {exc}") from exc
    return {SubsetMask(n, c): v for c, v in solved.items()}
