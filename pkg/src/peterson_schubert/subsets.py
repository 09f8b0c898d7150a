"""Index subsets of {1, ..., n-1}, their maximal consecutive blocks, and the
reduced words attached to Peterson fixed points.

Subsets are stored as Python ints used as bitmasks (bit ``i`` set means
``i`` is a member; bit 0 is never used).  :class:`SubsetMask` wraps such an
int together with the ambient rank ``n`` and is what the public API hands
back; every public function also accepts a plain iterable of indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Union

MAX_RANK = 64

__all__ = [
    "MAX_RANK",
    "SubsetMask",
    "ConsecutiveBlock",
    "SubsetLike",
    "as_subset",
    "parse_subset",
    "format_subset",
    "decompose",
    "is_consecutive",
    "staircase_word",
    "increasing_word",
    "block_words",
]


def _bits_of(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        i = int(i)
        if i < 1:
            raise ValueError(f"subset members must be >= 1, got {i}")
        bits |= 1 << i
    return bits


def members(bits: int) -> list[int]:
    """Sorted members of a bitmask."""
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


@dataclass(frozen=True, order=False)
class SubsetMask:
    """A subset of ``{1, ..., n-1}`` stored as a bitmask."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_RANK:
            raise ValueError(f"rank n must lie in 1..{MAX_RANK}, got {self.n}")
        if self.bits < 0 or self.bits & 1:
            raise ValueError("index 0 is not a valid member")
        if self.bits >> self.n:
            raise ValueError(
                f"subset {members(self.bits)} does not fit in {{1,...,{self.n - 1}}}"
            )

    @classmethod
    def of(cls, indices: Iterable[int], n: int | None = None) -> "SubsetMask":
        bits = _bits_of(indices)
        if n is None:
            n = max(bits.bit_length(), 1)
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "SubsetMask":
        return cls(n, ((1 << n) - 1) & ~1)

    def __iter__(self) -> Iterator[int]:
        return iter(members(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and i >= 1 and bool(self.bits >> i & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _coerce(self, other) -> int:
        if isinstance(other, SubsetMask):
            return other.bits
        return _bits_of(other)

    def __or__(self, other) -> "SubsetMask":
        bits = self.bits | self._coerce(other)
        return SubsetMask(max(self.n, bits.bit_length(), 1), bits)

    def __and__(self, other) -> "SubsetMask":
        return SubsetMask(self.n, self.bits & self._coerce(other))

    def __sub__(self, other) -> "SubsetMask":
        return SubsetMask(self.n, self.bits & ~self._coerce(other))

    def issubset(self, other) -> bool:
        return self.bits & ~self._coerce(other) == 0

    __le__ = issubset

    def sort_key(self) -> tuple[int, int]:
        """Order used for tables: by cardinality, then numeric value."""
        return (len(self), self.bits)

    def __str__(self) -> str:
        return format_subset(self)

    def __repr__(self) -> str:
        return f"SubsetMask(n={self.n}, {{{', '.join(map(str, self))}}})"


SubsetLike = Union[SubsetMask, Iterable[int]]


def as_subset(x: SubsetLike, n: int | None = None) -> SubsetMask:
    """Coerce a SubsetMask or an iterable of indices, optionally re-ranking to ``n``."""
    if isinstance(x, SubsetMask):
        if n is None or n == x.n:
            return x
        return SubsetMask(n, x.bits)
    if isinstance(x, str):
        return parse_subset(x, n)
    return SubsetMask.of(x, n)


_TOKEN = re.compile(r"^\s*(\d+)\s*(?:-\s*(\d+)\s*)?$")


def parse_subset(text: str, n: int | None = None) -> SubsetMask:
    """Parse ``"1,2,4-5"`` style syntax.  The empty string is the empty set.

    >>> list(parse_subset("1,2,4-5"))
    [1, 2, 4, 5]
    """
    text = text.strip()
    if text in ("", "{}", "∅"):
        return SubsetMask(n or 1, 0)
    bits = 0
    for tok in text.split(","):
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"cannot parse subset token {tok!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        if hi < lo:
            raise ValueError(f"empty range {tok!r}")
        bits |= _bits_of(range(lo, hi + 1))
    if n is None:
        n = bits.bit_length()
    return SubsetMask(n, bits)


def format_subset(A: SubsetLike) -> str:
    """Canonical serialized form: the sorted comma list."""
    return ",".join(str(i) for i in as_subset(A))


class ConsecutiveBlock(NamedTuple):
    """The run ``[tail, head]`` of consecutive integers."""

    tail: int
    head: int

    @property
    def size(self) -> int:
        return self.head - self.tail + 1

    @property
    def bits(self) -> int:
        return ((1 << (self.head + 1)) - 1) & ~((1 << self.tail) - 1)

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and self.tail <= i <= self.head

    def contains_block(self, other: "ConsecutiveBlock") -> bool:
        return self.tail <= other.tail and other.head <= self.head

    def word(self) -> tuple[int, ...]:
        """Staircase reduced word of the longest element on this block."""
        return tuple(j for h in range(self.head, self.tail - 1, -1)
                     for j in range(self.tail, h + 1))


def interval_bits(tail: int, head: int) -> int:
    return ((1 << (head + 1)) - 1) & ~((1 << tail) - 1)


def blocks_of_bits(bits: int) -> list[tuple[int, int]]:
    """Maximal runs of a bitmask as ``(tail, head)`` pairs, increasing."""
    out = []
    while bits:
        tail = (bits & -bits).bit_length() - 1
        x = bits >> tail
        run = (x ^ (x + 1)).bit_length() - 1
        out.append((tail, tail + run - 1))
        bits &= ~interval_bits(tail, tail + run - 1)
    return out


def decompose(A: SubsetLike) -> list[ConsecutiveBlock]:
    """Maximal consecutive blocks of ``A``, ordered by increasing tail.

    >>> decompose({1, 2, 4, 5})
    [ConsecutiveBlock(tail=1, head=2), ConsecutiveBlock(tail=4, head=5)]
    """
    return [ConsecutiveBlock(t, h) for t, h in blocks_of_bits(as_subset(A).bits)]


def is_consecutive(A: SubsetLike) -> bool:
    """True iff ``A`` is a single nonempty run.  The empty set is not consecutive."""
    return len(decompose(A)) == 1


def block_words(A: SubsetLike) -> list[tuple[int, ...]]:
    return [b.word() for b in decompose(A)]


def staircase_word(A: SubsetLike) -> tuple[int, ...]:
    """The reduced word W_A for the longest element of the parabolic subgroup
    generated by ``{s_i : i in A}``: per block ``(T..H, T..H-1, ..., T, T+1, T)``,
    blocks concatenated in increasing order.

    >>> staircase_word({1, 2, 4})
    (1, 2, 1, 4)
    """
    return tuple(j for b in decompose(A) for j in b.word())


def increasing_word(A: SubsetLike) -> tuple[int, ...]:
    """The increasing listing of ``A``, a reduced word for v_A."""
    return tuple(as_subset(A))
