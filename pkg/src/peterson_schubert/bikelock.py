"""Both sides of the generalized Vandermonde identity

    C(w+m, w) C(y+m, x) C(w+n, y) C(z+n, z)
        = sum_{i<=m, j<=n} C(w+i+n, w+i+j) M(w+m+j; i, j, m-i, x-i-j, z-x+j, y-x+i)

(w + x = y + z, m, n >= 0) and the bike lock moves that match the letter
matrices counted on the right with the 0/1/* matrices counted on the left.

Matrices are tuples of strings, one string per row.  Letter matrices use
``OPQRST-`` in the top row and ``UC-`` in the bottom row; number matrices use
``0``, ``1`` and ``*`` (the star placeholder).  Columns are 1-indexed in the
move API, matching the usual description of the moves.

This module works one matrix at a time; :mod:`.bikelock_batch` runs the same
pipeline over whole parameter points with numpy.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from itertools import combinations, product
from math import comb, factorial
from typing import Iterator, Optional

__all__ = [
    "IdentityParams",
    "binom",
    "lhs_count",
    "rhs_count",
    "s_letter_counts",
    "v_row_counts",
    "enumerate_S",
    "enumerate_V",
    "bike_lock_move",
    "bl_minus_rows",
    "bl_minus",
    "bl_star_rows",
    "bl_star",
    "left_align",
    "S_COLUMN_TYPES",
    "V_COLUMN_TYPES",
    "V_TO_S",
    "infer_params_S",
    "infer_params_V",
    "characterize_S_image",
    "characterize_V_image",
    "column_correspondence",
    "IdentityCertificate",
    "verify_identity",
]

SMatrix = tuple[str, str]
VMatrix = tuple[str, str, str, str]


@dataclass(frozen=True)
class IdentityParams:
    m: int
    n: int
    w: int
    x: int
    y: int
    z: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be nonnegative")
        if self.w + self.x != self.y + self.z:
            raise ValueError(f"w + x = {self.w + self.x} differs from y + z = {self.y + self.z}")

    @property
    def width(self) -> int:
        return self.w + self.m + self.n

    def strata(self) -> Iterator[tuple[int, int]]:
        """The (i, j) = (|P|, |T|) values whose letter counts are all nonnegative."""
        for i in range(self.m + 1):
            for j in range(self.n + 1):
                if s_letter_counts(self, i, j) is not None:
                    yield i, j

    @property
    def vacuous(self) -> bool:
        """True when no letter or number matrix exists at all."""
        return v_row_counts(self) is None and not any(True for _ in self.strata())


def binom(a: int, b: int) -> int:
    """C(a, b), zero for b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def _multinomial(top: int, parts) -> int:
    if top < 0 or any(k < 0 for k in parts) or sum(parts) > top:
        return 0
    out = factorial(top) // factorial(top - sum(parts))
    for k in parts:
        out //= factorial(k)
    return out


def lhs_count(p: IdentityParams) -> int:
    """C(w+m, w) C(y+m, x) C(w+n, y) C(z+n, z)."""
    return (binom(p.w + p.m, p.w) * binom(p.y + p.m, p.x)
            * binom(p.w + p.n, p.y) * binom(p.z + p.n, p.z))


def rhs_count(p: IdentityParams) -> int:
    total = 0
    for i in range(p.m + 1):
        for j in range(p.n + 1):
            total += binom(p.w + i + p.n, p.w + i + j) * _multinomial(
                p.w + p.m + j,
                (i, j, p.m - i, p.x - i - j, p.z - p.x + j, p.y - p.x + i))
    return total


def s_letter_counts(p: IdentityParams, i: int, j: int) -> Optional[tuple[dict, dict]]:
    """Letter counts of the top and bottom rows for |P| = i, |T| = j, or None
    if some count is negative."""
    top = {"O": p.m - i, "P": i, "Q": p.y - p.x + i, "R": p.x - i - j,
           "S": p.z - p.x + j, "T": j, "-": p.n - j}
    bottom = {"U": p.n - j, "C": p.w + i + j, "-": p.m - i}
    if min(top.values()) < 0 or min(bottom.values()) < 0:
        return None
    return top, bottom


def v_row_counts(p: IdentityParams) -> Optional[list[dict]]:
    """Counts of 1, 0, * in each of the four rows, or None if any is negative."""
    rows = [
        {"1": p.w, "0": p.m, "*": p.n},
        {"1": p.x, "0": p.y - p.x + p.m, "*": p.z - p.x + p.n},
        {"1": p.y, "0": p.z - p.x + p.n, "*": p.m},
        {"1": p.z, "0": p.n, "*": p.y - p.x + p.m},
    ]
    if any(v < 0 for r in rows for v in r.values()):
        return None
    return rows


def _arrangements(counts: list[tuple[str, int]]) -> Iterator[str]:
    """All distinct words with the given symbol multiplicities."""
    length = sum(c for _, c in counts)
    if not counts:
        yield ""
        return
    (sym, c), rest = counts[0], counts[1:]
    for spots in combinations(range(length), c):
        taken = set(spots)
        free = [k for k in range(length) if k not in taken]
        for sub in _arrangements(rest):
            word = [sym] * length
            for k, s in zip(free, sub):
                word[k] = s
            yield "".join(word)


def _left_aligned_rows(counts: dict, placeholder: str) -> list[str]:
    letters = [(s, c) for s, c in counts.items() if s != placeholder]
    pad = placeholder * counts[placeholder]
    return [word + pad for word in _arrangements(letters)]


def enumerate_S(p: IdentityParams) -> list[SMatrix]:
    """Every left-aligned letter matrix (F; G) with counts from some (i, j)."""
    out = []
    for i, j in p.strata():
        top, bottom = s_letter_counts(p, i, j)
        out.extend(product(_left_aligned_rows(top, "-"), _left_aligned_rows(bottom, "-")))
    return out


def enumerate_V(p: IdentityParams) -> list[VMatrix]:
    """Every 4-row 0/1 matrix with left-aligned numbers and the prescribed row counts."""
    rows = v_row_counts(p)
    if rows is None:
        return []
    return list(product(*(_left_aligned_rows(r, "*") for r in rows)))


def bike_lock_move(M: tuple[str, ...], k: int, rows) -> tuple[str, ...]:
    """Rotate columns k..c of each listed row (1-indexed) one step to the right,
    the last entry wrapping into column k."""
    out = list(M)
    for r in rows:
        s = out[r - 1]
        out[r - 1] = s[:k - 1] + s[-1] + s[k - 1:-1]
    return tuple(out)


def bl_minus_rows(M: SMatrix, k: int) -> frozenset[int]:
    top, bottom = M[0][k - 1], M[1][k - 1]
    if top == "O":
        return frozenset({2})
    if bottom == "U":
        return frozenset({1})
    return frozenset()


def bl_minus(M: SMatrix) -> SMatrix:
    """BL^-_c o ... o BL^-_1.

    >>> bl_minus(("RQOSPRTR-", "CCUCCCCC-"))
    ('RQO-SPRTR', 'CC-UCCCCC')
    """
    for k in range(1, len(M[0]) + 1):
        M = bike_lock_move(M, k, bl_minus_rows(M, k))
    return M


_STAR_ROWS = {
    (1,): ["0110", "1110", "1*00"],
    (2,): ["1001", "1101", "*100"],
    (3,): ["0101", "0111", "001*"],
    (4,): ["1010", "1011", "00*1"],
    (1, 2): ["1000", "0100", "1100"],
    (3, 4): ["0000", "0010", "0001", "0011"],
}
STAR_ROW_TABLE: dict[str, frozenset[int]] = {
    col: frozenset(rows) for rows, cols in _STAR_ROWS.items() for col in cols
}


def bl_star_rows(M: VMatrix, k: int) -> frozenset[int]:
    col = "".join(row[k - 1] for row in M)
    return STAR_ROW_TABLE.get(col, frozenset())


def bl_star(M: VMatrix) -> VMatrix:
    """BL*_c o ... o BL*_1 with row sets looked up per column.

    >>> bl_star(("010**", "000**", "010**", "00***"))
    ('0*10*', '0*00*', '*01*0', '*0**0')
    """
    for k in range(1, len(M[0]) + 1):
        M = bike_lock_move(M, k, bl_star_rows(M, k))
    return M


def left_align(M: tuple[str, ...], placeholder: str) -> tuple[str, ...]:
    """Push every placeholder to the right end of its row (inverse of the moves)."""
    return tuple(r.replace(placeholder, "") + placeholder * r.count(placeholder) for r in M)


S_COLUMN_TYPES = ("-U", "O-", "PC", "QC", "RC", "SC", "TC")
V_COLUMN_TYPES = ("*110", "1*01", "01*1", "101*", "**00", "00**", "1111")
V_TO_S = {"*110": "TC", "1*01": "SC", "01*1": "PC", "101*": "QC",
          "**00": "-U", "00**": "O-", "1111": "RC"}
_S_FORBIDDEN = ("-U", "O-")
_V_FORBIDDEN = ("**00", "00**")


def _columns(M: tuple[str, ...]) -> list[str]:
    return ["".join(col) for col in zip(*M)]


def _row_counts(row: str, alphabet: str) -> dict:
    return {s: row.count(s) for s in alphabet}


def infer_params_S(M: SMatrix) -> Optional[IdentityParams]:
    """The parameter point whose letter counts a two-row matrix carries, read
    off with i = |P| and j = |T|; None if the rows cannot come from any point."""
    top, bottom = _row_counts(M[0], "OPQRST-"), _row_counts(M[1], "UC-")
    i, j = top["P"], top["T"]
    m, n, x = top["O"] + i, top["-"] + j, top["R"] + i + j
    y, z, w = top["Q"] + x - i, top["S"] + x - j, bottom["C"] - i - j
    try:
        return IdentityParams(m, n, w, x, y, z) if min(w, x, y, z) >= 0 else None
    except ValueError:
        return None


def infer_params_V(M: VMatrix) -> Optional[IdentityParams]:
    """Parameters read from the first row (w ones, m zeros, n stars) and the
    ones of rows 2-4 (x, y, z); None if they violate w + x = y + z."""
    if len(M) != 4:
        return None
    w, m, n = M[0].count("1"), M[0].count("0"), M[0].count("*")
    try:
        return IdentityParams(m, n, w, M[1].count("1"), M[2].count("1"), M[3].count("1"))
    except ValueError:
        return None


def characterize_S_image(M: SMatrix, p: Optional[IdentityParams] = None) -> bool:
    """Membership in the image of BL^-: only the seven column types, no
    (-;U) immediately followed by (O;-), letter counts from some (i, j).

    Without ``p`` the point is read off the matrix itself; the count condition
    then only asks that such a point exists.
    """
    if p is None:
        p = infer_params_S(M) if len(M) == 2 and len(M[0]) == len(M[1]) else None
        if p is None:
            return False
    if len(M) != 2 or len(M[0]) != p.width or len(M[1]) != p.width:
        return False
    cols = _columns(M)
    if any(c not in S_COLUMN_TYPES for c in cols):
        return False
    if any((a, b) == _S_FORBIDDEN for a, b in zip(cols, cols[1:])):
        return False
    top, bottom = _row_counts(M[0], "OPQRST-"), _row_counts(M[1], "UC-")
    wanted = s_letter_counts(p, top["P"], top["T"])
    return (top["P"] <= p.m and top["T"] <= p.n and wanted is not None
            and wanted == (top, bottom))


def characterize_V_image(M: VMatrix, p: Optional[IdentityParams] = None) -> bool:
    """Membership in the image of BL*: seven column types, no (**00)
    immediately followed by (00**), row counts as prescribed.  Without ``p``
    the point is read off the first row and the ones of the others."""
    if p is None:
        p = infer_params_V(M)
        if p is None:
            return False
    rows = v_row_counts(p)
    if rows is None or len(M) != 4 or any(len(r) != p.width for r in M):
        return False
    cols = _columns(M)
    if any(c not in V_COLUMN_TYPES for c in cols):
        return False
    if any((a, b) == _V_FORBIDDEN for a, b in zip(cols, cols[1:])):
        return False
    return all(_row_counts(r, "10*") == want for r, want in zip(M, rows))


def column_correspondence(M: VMatrix, p: Optional[IdentityParams] = None) -> SMatrix:
    """Column-wise substitution of the seven number columns by the seven
    letter columns.  With ``p`` given, the full image characterization is
    checked first."""
    if p is not None and not characterize_V_image(M, p):
        raise ValueError(f"{M} is not in the image of BL*")
    cols = _columns(M)
    try:
        mapped = [V_TO_S[c] for c in cols]
    except KeyError as exc:
        raise ValueError(f"column {exc.args[0]!r} is not one of the seven types") from None
    return ("".join(c[0] for c in mapped), "".join(c[1] for c in mapped))


@dataclass
class IdentityCertificate:
    params: IdentityParams
    lhs: int
    rhs: int
    size_S: int
    size_V: int
    bijection: Optional[bool] = None
    vacuous: bool = False
    checks: dict = field(default_factory=dict)
    elapsed: float = 0.0
    pairs: Optional[list] = None

    @property
    def counts_agree(self) -> bool:
        return self.lhs == self.rhs == self.size_S == self.size_V

    @property
    def ok(self) -> bool:
        return self.counts_agree and self.bijection is not False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = asdict(self.params)
        for key in ("lhs", "rhs", "size_S", "size_V"):
            d[key] = str(d[key])
        d["ok"] = self.ok
        if self.pairs is None:
            del d["pairs"]
        return d


def verify_identity(p: IdentityParams, bijection: bool = True, trace: bool = False) -> IdentityCertificate:
    """Count and enumerate both sides; optionally run the move pipeline
    through the column correspondence.  Failures are recorded in the
    certificate rather than raised."""
    from .bikelock_batch import run_point

    start = time.perf_counter()
    cert = IdentityCertificate(p, lhs_count(p), rhs_count(p), 0, 0, vacuous=p.vacuous)
    if cert.vacuous:
        cert.bijection = True if bijection else None
        cert.elapsed = time.perf_counter() - start
        return cert
    result = run_point(p, bijection=bijection)
    cert.size_S, cert.size_V = result.size_S, result.size_V
    cert.checks = result.checks
    if bijection:
        cert.bijection = all(result.checks.values())
    if trace:
        cert.pairs = trace_pairs(p)
    cert.elapsed = time.perf_counter() - start
    return cert


def trace_pairs(p: IdentityParams) -> list[dict]:
    """The explicit pairing V -> BL*(V) -> letter matrix -> its preimage under BL^-."""
    out = []
    for V in enumerate_V(p):
        moved = bl_star(V)
        S_tilde = column_correspondence(moved)
        out.append({"V": list(V), "BL*(V)": list(moved),
                    "S~": list(S_tilde), "S": list(left_align(S_tilde, "-"))})
    return out
