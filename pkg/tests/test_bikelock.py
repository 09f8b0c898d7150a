from itertools import product

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from peterson_schubert.bikelock import (
    S_COLUMN_TYPES,
    IdentityParams,
    bike_lock_move,
    bl_minus,
    bl_star,
    characterize_S_image,
    characterize_V_image,
    column_correspondence,
    enumerate_S,
    enumerate_V,
    left_align,
    lhs_count,
    rhs_count,
    verify_identity,
)
from peterson_schubert.bikelock_batch import (
    BOTTOM_CODE,
    TOP_CODE,
    V_CODE,
    bl_minus_batch,
    bl_star_batch,
    characterized_S_count,
    characterized_V_count,
    decode_rows,
    encode_rows,
    identity_grid,
    run_point,
)


def small_points(max_width=6):
    return list(identity_grid(2, 2, 3, max_width))


@st.composite
def params(draw, max_entry=3):
    m, n = draw(st.integers(0, 2)), draw(st.integers(0, 2))
    w, x, y = (draw(st.integers(0, max_entry)) for _ in range(3))
    z = w + x - y
    assume(0 <= z <= max_entry)
    return IdentityParams(m, n, w, x, y, z)


def test_params_validation():
    with pytest.raises(ValueError):
        IdentityParams(0, 0, 1, 0, 0, 0)
    with pytest.raises(ValueError):
        IdentityParams(-1, 0, 0, 0, 0, 0)


def test_move_rotates_suffix():
    assert bike_lock_move(("abcde", "vwxyz"), 2, {1}) == ("aebcd", "vwxyz")
    assert bike_lock_move(("abcde", "vwxyz"), 5, {1, 2}) == ("abcde", "vwxyz")


def test_letter_example():
    assert bl_minus(("RQOSPRTR-", "CCUCCCCC-")) == ("RQO-SPRTR", "CC-UCCCCC")


def test_number_example():
    V = ("010**", "000**", "010**", "00***")
    out = bl_star(V)
    assert out == ("0*10*", "0*00*", "*01*0", "*0**0")
    p = IdentityParams(m=2, n=2, w=1, x=0, y=1, z=0)
    assert V in enumerate_V(p)
    assert characterize_V_image(out, p)


def test_small_counts():
    assert lhs_count(IdentityParams(1, 0, 1, 1, 1, 1)) == rhs_count(IdentityParams(1, 0, 1, 1, 1, 1)) == 4
    assert lhs_count(IdentityParams(0, 0, 0, 0, 0, 0)) == 1
    # with m = n = 0 both sides collapse to a single product of binomials
    p = IdentityParams(0, 0, 3, 1, 2, 2)
    assert lhs_count(p) == rhs_count(p)


@pytest.mark.parametrize("p", small_points(), ids=str)
def test_pipeline_per_matrix(p):
    S, V = enumerate_S(p), enumerate_V(p)
    assert len(S) == len(V) == lhs_count(p) == rhs_count(p)
    S_img = [bl_minus(M) for M in S]
    V_img = [bl_star(M) for M in V]
    assert len(set(S_img)) == len(S) and len(set(V_img)) == len(V)
    assert all(characterize_S_image(M, p) for M in S_img)
    assert all(characterize_V_image(M, p) for M in V_img)
    assert set(S_img) == {column_correspondence(M, p) for M in V_img}
    assert all(left_align(M2, "-") == M for M, M2 in zip(S, S_img))


@pytest.mark.parametrize("p", [q for q in small_points(5) if q.width <= 4], ids=str)
def test_characterization_counts_by_brute_force(p):
    # every 2-row matrix built from the seven column types
    words = product(S_COLUMN_TYPES, repeat=p.width)
    found = sum(characterize_S_image(("".join(c[0] for c in w), "".join(c[1] for c in w)), p) for w in words)
    assert found == characterized_S_count(p) == characterized_V_count(p) == lhs_count(p)


@settings(max_examples=25, deadline=None)
@given(params())
def test_batch_moves_match_scalar(p):
    S = enumerate_S(p)
    if S:
        top = np.array([encode_rows(M[0], TOP_CODE, 3) for M in S], dtype=np.uint64)
        bottom = np.array([encode_rows(M[1], BOTTOM_CODE, 2) for M in S], dtype=np.uint64)
        t2, b2 = bl_minus_batch(top, bottom, p.width)
        for M, t, b in zip(S, t2, b2):
            assert bl_minus(M) == (decode_rows(t, p.width, TOP_CODE, 3), decode_rows(b, p.width, BOTTOM_CODE, 2))
    V = enumerate_V(p)
    if V:
        rows = [np.array([encode_rows(M[r], V_CODE, 2) for M in V], dtype=np.uint64) for r in range(4)]
        out = bl_star_batch(rows, p.width)
        for idx, M in enumerate(V):
            assert bl_star(M) == tuple(decode_rows(out[r][idx], p.width, V_CODE, 2) for r in range(4))


@settings(max_examples=25, deadline=None)
@given(params(max_entry=4))
def test_certificate(p):
    cert = verify_identity(p)
    assert cert.ok and cert.bijection
    assert cert.size_S == cert.size_V == cert.lhs == cert.rhs
    d = cert.to_dict()
    assert d["lhs"] == str(cert.lhs) and d["ok"]


def test_vacuous_point():
    p = IdentityParams(0, 0, 0, 3, 0, 3)
    cert = verify_identity(p)
    assert cert.vacuous and cert.lhs == cert.rhs == 0 and cert.ok


def test_trace_pairs_invert_moves():
    p = IdentityParams(1, 1, 1, 0, 1, 0)
    cert = verify_identity(p, trace=True)
    assert len(cert.pairs) == cert.lhs == 4
    for pair in cert.pairs:
        assert bl_minus(tuple(pair["S"])) == tuple(pair["S~"])


def test_correspondence_rejects_foreign_columns():
    with pytest.raises(ValueError):
        column_correspondence(("0", "0", "0", "0"))


def test_run_point_checks_named():
    res = run_point(IdentityParams(2, 1, 3, 2, 3, 2))
    assert res.size_S == res.size_V == 1200
    assert all(res.checks.values()) and len(res.checks) == 7


@pytest.mark.parametrize("p", [q for q in small_points(6) if q.width >= 1][::7], ids=str)
def test_characterization_without_params(p):
    for M in enumerate_V(p):
        moved = bl_star(M)
        assert characterize_V_image(moved)
        assert characterize_S_image(column_correspondence(moved))
    assert not characterize_V_image(("1", "1", "1", "0"))


def test_inferred_point_of_letter_example():
    from peterson_schubert.bikelock import infer_params_S

    p = infer_params_S(("RQO-SPRTR", "CC-UCCCCC"))
    assert p.width == 9 and characterize_S_image(("RQO-SPRTR", "CC-UCCCCC"), p)
    assert not characterize_S_image(("RQO-SPRTR", "CCU-CCCCC"))
