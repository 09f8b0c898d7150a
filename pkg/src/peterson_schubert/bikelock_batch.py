"""Vectorized bike lock pipeline.

Each row of a matrix is packed into one ``uint64``, a fixed number of bits per
column (3 for the top letter row, 2 for every other row).  A bike lock move on
columns k..c is then a handful of shifts and masks, applied to a whole batch
with ``np.where``.  Full matrices of a parameter point are generated as a
cartesian product of row arrangements and processed in chunks.

The letter code of a matrix is ``top | bottom << 3c``; number matrices that
pass the image test are sent through the column correspondence into the same
code, so the bijection check is a comparison of two sorted arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

import numpy as np

from .bikelock import (
    IdentityParams,
    S_COLUMN_TYPES,
    V_TO_S,
    s_letter_counts,
    v_row_counts,
)

__all__ = [
    "TOP_CODE",
    "BOTTOM_CODE",
    "V_CODE",
    "row_codes",
    "encode_rows",
    "decode_rows",
    "bl_minus_batch",
    "bl_star_batch",
    "s_image_mask",
    "v_image_types",
    "characterized_S_count",
    "characterized_V_count",
    "PointResult",
    "run_point",
    "identity_grid",
]

U64 = np.uint64
CHUNK = 1 << 20

TOP_CODE = {"-": 0, "O": 1, "P": 2, "Q": 3, "R": 4, "S": 5, "T": 6}
BOTTOM_CODE = {"-": 0, "U": 1, "C": 2}
V_CODE = {"0": 0, "1": 1, "*": 2}


def _sym_matrix(counts: tuple[tuple[int, int], ...]) -> np.ndarray:
    """All distinct arrangements of a multiset of small codes, one per row."""
    length = sum(c for _, c in counts)
    if not counts:
        return np.zeros((1, 0), dtype=np.uint8)
    (code, c), rest = counts[0], _sym_matrix(counts[1:])
    combos = np.array(list(combinations(range(length), c)), dtype=np.intp).reshape(-1, c)
    n1 = len(combos)
    taken = np.zeros((n1, length), dtype=bool)
    taken[np.arange(n1)[:, None], combos] = True
    free = np.nonzero(~taken)[1].reshape(n1, length - c)
    out = np.full((n1, len(rest), length), code, dtype=np.uint8)
    out[np.arange(n1)[:, None, None], np.arange(len(rest))[None, :, None], free[:, None, :]] = rest[None, :, :]
    return out.reshape(-1, length)


@lru_cache(maxsize=128)
def row_codes(counts: tuple[tuple[int, int], ...], pad_code: int, pad: int, bits: int) -> np.ndarray:
    """Packed codes of every left-aligned row: an arrangement of ``counts``
    followed by ``pad`` copies of ``pad_code``."""
    counts = tuple((code, c) for code, c in counts if c)
    sym = _sym_matrix(counts)
    length = sym.shape[1]
    out = np.zeros(len(sym), dtype=U64)
    for k in range(length):
        out |= sym[:, k].astype(U64) << U64(bits * k)
    tail = 0
    for k in range(length, length + pad):
        tail |= pad_code << (bits * k)
    out |= U64(tail)
    out.flags.writeable = False
    return out


def encode_rows(rows, table: dict, bits: int) -> int:
    code = 0
    for k, s in enumerate(rows):
        code |= table[s] << (bits * k)
    return code


def decode_rows(code: int, width: int, table: dict, bits: int) -> str:
    inverse = {v: s for s, v in table.items()}
    mask = (1 << bits) - 1
    return "".join(inverse[(int(code) >> (bits * k)) & mask] for k in range(width))


def _rotate(r: np.ndarray, k: int, bits: int, width: int) -> np.ndarray:
    """Rotate columns k..width-1 (0-indexed) one step right."""
    low_mask = U64((1 << (bits * k)) - 1)
    seg_mask = U64((1 << (bits * (width - k))) - 1)
    seg = r >> U64(bits * k)
    last = seg >> U64(bits * (width - 1 - k))
    seg = ((seg << U64(bits)) & seg_mask) | last
    return (r & low_mask) | (seg << U64(bits * k))


def _rotate_where(r: np.ndarray, sel: np.ndarray, k: int, bits: int, width: int) -> None:
    """In place: rotate the rows of ``r`` flagged in ``sel``."""
    idx = np.flatnonzero(sel)
    if len(idx):
        r[idx] = _rotate(r[idx], k, bits, width)


def bl_minus_batch(top: np.ndarray, bottom: np.ndarray, width: int):
    top, bottom = top.copy(), bottom.copy()
    for k in range(width):
        move_bottom = ((top >> U64(3 * k)) & U64(7)) == TOP_CODE["O"]
        move_top = (((bottom >> U64(2 * k)) & U64(3)) == BOTTOM_CODE["U"]) & ~move_bottom
        _rotate_where(bottom, move_bottom, k, 2, width)
        _rotate_where(top, move_top, k, 3, width)
    return top, bottom


def _star_lut() -> np.ndarray:
    from .bikelock import STAR_ROW_TABLE

    lut = np.zeros(256, dtype=np.uint8)
    for col, rows in STAR_ROW_TABLE.items():
        idx = sum(V_CODE[s] << (2 * r) for r, s in enumerate(col))
        lut[idx] = sum(1 << (r - 1) for r in rows)
    return lut


_STAR_LUT = _star_lut()


def bl_star_batch(rows: list[np.ndarray], width: int) -> list[np.ndarray]:
    rows = [r.copy() for r in rows]
    for k in range(width):
        which = _STAR_LUT[_column_index(rows, k, [2] * 4)]
        for r in range(4):
            _rotate_where(rows[r], (which >> r) & 1 == 1, k, 2, width)
    return rows


# column type ids follow S_COLUMN_TYPES; 7 marks anything else
_S_TYPE_LUT = np.full(8 * 4, 7, dtype=np.uint8)
for _t, _col in enumerate(S_COLUMN_TYPES):
    _S_TYPE_LUT[TOP_CODE[_col[0]] | BOTTOM_CODE[_col[1]] << 3] = _t
_V_TYPE_LUT = np.full(256, 7, dtype=np.uint8)
for _vcol, _scol in V_TO_S.items():
    _V_TYPE_LUT[sum(V_CODE[s] << (2 * r) for r, s in enumerate(_vcol))] = S_COLUMN_TYPES.index(_scol)
_TYPE_TOP = np.array([TOP_CODE[c[0]] for c in S_COLUMN_TYPES] + [0], dtype=U64)
_TYPE_BOTTOM = np.array([BOTTOM_CODE[c[1]] for c in S_COLUMN_TYPES] + [0], dtype=U64)


def _type_checks(types: list[np.ndarray], size: int) -> np.ndarray:
    """Every column typed and no (-;U) directly before (O;-)."""
    ok = np.ones(size, dtype=bool)
    prev = None
    for t in types:
        ok &= t < 7
        if prev is not None:
            ok &= ~((prev == 0) & (t == 1))
        prev = t
    return ok


def _lane_mask(bits: int, width: int) -> int:
    return sum(1 << (bits * k) for k in range(width))


def _count_code(r: np.ndarray, code: int, bits: int, width: int) -> np.ndarray:
    """Number of columns of a packed row holding ``code``."""
    lanes = _lane_mask(bits, width)
    hit = U64(lanes)
    for b in range(bits):
        plane = r >> U64(b)
        hit = hit & (plane if (code >> b) & 1 else ~plane)
    return np.bitwise_count(hit & U64(lanes)).astype(np.int16)


def _column_index(rows: list[np.ndarray], k: int, bits: list[int]) -> np.ndarray:
    """The k-th column of several packed rows, glued into one small integer."""
    col = np.zeros(len(rows[0]), dtype=U64)
    shift = 0
    for arr, b in zip(rows, bits):
        part = arr >> U64(b * k)
        part &= U64((1 << b) - 1)
        part <<= U64(shift)
        col |= part
        shift += b
    return col.astype(np.intp)


def s_image_mask(top: np.ndarray, bottom: np.ndarray, p: IdentityParams) -> np.ndarray:
    """Vectorized version of the letter-side image characterization."""
    width = p.width
    types = [_S_TYPE_LUT[_column_index([top, bottom], k, [3, 2])] for k in range(width)]
    ok = _type_checks(types, len(top))
    # once every column is typed, type counts are letter counts of the top row
    cnt = {s: _count_code(top, TOP_CODE[s], 3, width) for s in "OPQRST-"}
    i, j = cnt["P"], cnt["T"]
    ok &= (i <= p.m) & (j <= p.n)
    ok &= cnt["O"] == p.m - i
    ok &= cnt["Q"] == p.y - p.x + i
    ok &= cnt["R"] == p.x - i - j
    ok &= cnt["S"] == p.z - p.x + j
    ok &= cnt["-"] == p.n - j
    return ok


def v_image_types(rows: list[np.ndarray], p: IdentityParams) -> tuple[np.ndarray, np.ndarray]:
    """Characterization mask of number matrices and, for each, its image under
    the column correspondence as a letter code."""
    width = p.width
    types = [_V_TYPE_LUT[_column_index(rows, k, [2] * 4)] for k in range(width)]
    ok = _type_checks(types, len(rows[0]))
    for arr, want in zip(rows, v_row_counts(p)):
        ok &= _count_code(arr, V_CODE["1"], 2, width) == want["1"]
        ok &= _count_code(arr, V_CODE["*"], 2, width) == want["*"]
    code = np.zeros(len(rows[0]), dtype=U64)
    for k, t in enumerate(types):
        code |= _TYPE_TOP[t] << U64(3 * k)
        code |= _TYPE_BOTTOM[t] << U64(3 * width + 2 * k)
    return ok, code


def _gap_count(consonants, gap_a: int, gap_b: int) -> int:
    """Column words with the given consonant multiplicities plus gap_a and
    gap_b columns of two vowel types, where one vowel type may never directly
    follow the other.  Each of the k + 1 gaps between consonants is then a run
    of the first type after a run of the second, so both kinds distribute
    independently over the gaps."""
    k = sum(consonants)
    multi = factorial(k)
    for c in consonants:
        multi //= factorial(c)
    return multi * comb(gap_a + k, k) * comb(gap_b + k, k)


def characterized_S_count(p: IdentityParams) -> int:
    total = 0
    for i, j in p.strata():
        top, _ = s_letter_counts(p, i, j)
        total += _gap_count([top[s] for s in "PQRST"], top["O"], top["-"])
    return total


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> np.ndarray:
    rows = []
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev, comp = -1, []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(total + parts - 2 - prev)
        rows.append(comp)
    return np.array(rows, dtype=np.int64).reshape(-1, parts)


_V_TYPES_ORDERED = list(V_TO_S)


def characterized_V_count(p: IdentityParams) -> int:
    """Count number matrices meeting the image characterization by solving for
    column-type multiplicities against the row counts directly."""
    rows = v_row_counts(p)
    if rows is None:
        return 0
    comps = _compositions(p.width, 7)
    ok = np.ones(len(comps), dtype=bool)
    for r, want in enumerate(rows):
        ones = np.array([col[r] == "1" for col in _V_TYPES_ORDERED], dtype=np.int64)
        stars = np.array([col[r] == "*" for col in _V_TYPES_ORDERED], dtype=np.int64)
        ok &= (comps @ ones == want["1"]) & (comps @ stars == want["*"])
    lo, hi = _V_TYPES_ORDERED.index("**00"), _V_TYPES_ORDERED.index("00**")
    total = 0
    for a in comps[ok]:
        consonants = [int(v) for t, v in enumerate(a) if t not in (lo, hi)]
        total += _gap_count(consonants, int(a[hi]), int(a[lo]))
    return total


def _product_chunks(arrays: list[np.ndarray], chunk: int = CHUNK):
    lens = [len(a) for a in arrays]
    total = int(np.prod(lens, dtype=np.int64))
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield [a[ix] for a, ix in zip(arrays, np.unravel_index(idx, lens))]


def _sorted_unique(parts: list[np.ndarray]) -> tuple[np.ndarray, bool]:
    arr = np.concatenate(parts) if parts else np.zeros(0, dtype=U64)
    arr.sort()
    injective = bool(len(arr) < 2 or np.all(arr[1:] != arr[:-1]))
    return arr, injective


@dataclass
class PointResult:
    size_S: int = 0
    size_V: int = 0
    checks: dict = field(default_factory=dict)


def s_row_arrays(p: IdentityParams, i: int, j: int):
    top, bottom = s_letter_counts(p, i, j)
    t = row_codes(tuple((TOP_CODE[s], top[s]) for s in "OPQRST"), 0, top["-"], 3)
    b = row_codes(tuple((BOTTOM_CODE[s], bottom[s]) for s in "UC"), 0, bottom["-"], 2)
    return t, b


def v_row_arrays(p: IdentityParams):
    return [row_codes(((V_CODE["1"], r["1"]), (V_CODE["0"], r["0"])), V_CODE["*"], r["*"], 2)
            for r in v_row_counts(p)]


def run_point(p: IdentityParams, bijection: bool = True) -> PointResult:
    """Enumerate both sides of one point and, if asked, check the bijection."""
    res = PointResult()
    width = p.width
    s_codes, s_ok = [], True
    for i, j in p.strata():
        t, b = s_row_arrays(p, i, j)
        res.size_S += len(t) * len(b)
        if not bijection:
            continue
        for top, bottom in _product_chunks([t, b]):
            top, bottom = bl_minus_batch(top, bottom, width)
            s_ok &= bool(s_image_mask(top, bottom, p).all())
            s_codes.append(top | (bottom << U64(3 * width)))

    v_codes, v_ok = [], True
    if v_row_counts(p) is not None:
        arrays = v_row_arrays(p)
        res.size_V = int(np.prod([len(a) for a in arrays], dtype=np.int64))
        if bijection:
            for rows in _product_chunks(arrays):
                rows = bl_star_batch(rows, width)
                ok, code = v_image_types(rows, p)
                v_ok &= bool(ok.all())
                v_codes.append(code)
    if not bijection:
        return res

    s_sorted, s_inj = _sorted_unique(s_codes)
    v_sorted, v_inj = _sorted_unique(v_codes)
    res.checks = {
        "S_image_characterized": s_ok,
        "S_moves_injective": s_inj,
        "S_image_exhausts_characterization": len(s_sorted) == characterized_S_count(p),
        "V_image_characterized": v_ok,
        "V_moves_injective": v_inj,
        "V_image_exhausts_characterization": len(v_sorted) == characterized_V_count(p),
        "correspondence_matches_images": bool(np.array_equal(s_sorted, v_sorted)),
    }
    return res


def identity_grid(max_m: int = 3, max_n: int = 3, max_entry: int = 5, max_width: int = 12):
    """All admissible points with m <= max_m, n <= max_n, each of w, x, y, z at
    most max_entry and w + m + n <= max_width."""
    rng = range(max_entry + 1)
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            for w in rng:
                if w + m + n > max_width:
                    continue
                for x in rng:
                    for y in rng:
                        z = w + x - y
                        if 0 <= z <= max_entry:
                            yield IdentityParams(m, n, w, x, y, z)
