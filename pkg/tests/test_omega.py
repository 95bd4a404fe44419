from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from towerlab.exact import is_square_int
from towerlab.omega import (
    IncreaseReason,
    Reason,
    Status,
    classify_pair,
    ec_point_scan,
    enumerate_omega1,
    enumerate_sigma12,
    fn_scan,
    increase_sufficient,
    is_thin,
    klein_witness_scan,
    omega1_cert,
    totally_real,
)
from towerlab.quartic import GaloisType
from towerlab.tower import Pair, Tower, u_seq


def test_classify_examples():
    c = classify_pair(Pair(2, 0), 4)
    assert (c.status, c.depth) == (Status.INC, 4)
    c = classify_pair(Pair(5, 4), 1)
    assert (c.status, c.depth, c.reason) == (Status.NOT_IN_OMEGA, 1, Reason.DEGREE_COLLAPSE)
    c = classify_pair(Pair(4, 3), 4)
    assert (c.status, c.depth) == (Status.DEC, 4)
    assert str(c) == "DecVerified(4)"


def test_classify_rejects_zero_depth():
    with pytest.raises(ValueError):
        classify_pair(Pair(2, 0), 0)


def test_classify_not_totally_real():
    # (2, 14): x_1 = 4 is rational, so degree collapses first
    assert classify_pair(Pair(2, 14), 3).reason is Reason.DEGREE_COLLAPSE
    # (3, 7): nu + x0 = 10 and nu - sqrt(10) < 0
    c = classify_pair(Pair(3, 7), 3)
    assert (c.reason, c.depth) == (Reason.NOT_TOTALLY_REAL, 2)


def test_classify_deep():
    assert classify_pair(Pair(4, 3), 12).status is Status.DEC
    assert classify_pair(Pair(2, 0), 10).status is Status.INC


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(0, 60))
def test_classify_labels_respect_inequalities(nu, x0):
    c = classify_pair(Pair(nu, x0), 3)
    if c.status is Status.INC:
        assert nu > x0 * x0 - x0
    if c.status is Status.DEC:
        assert nu < x0 * x0 - x0 and x0 < nu * nu - nu


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.integers(0, 60), st.integers(1, 3))
def test_total_reality_matches_root_count(nu, x0, n):
    t = Tower.for_pair(Pair(nu, x0), n)
    coeffs = [int(c) for c in t.min_poly(n).coeffs]
    assert totally_real(Pair(nu, x0), n) == (oracles.real_root_count(coeffs) == 2 ** n)


@pytest.mark.parametrize("pair", [Pair(2, 0), Pair(2, 1), Pair(3, 0), Pair(4, 3), Pair(3, 7)], ids=str)
def test_house_certificate_agrees_with_sturm(pair):
    from towerlab.omega import _totally_real_by_houses
    for n in range(1, 7):
        assert _totally_real_by_houses(pair, n) == totally_real(pair, n)


@pytest.mark.parametrize("pair, reason", [
    (Pair(4, 3), IncreaseReason.MOD4),
    (Pair(3, 0), IncreaseReason.ZERO_NON_SQUARE),
    (Pair(5, 19), IncreaseReason.UNKNOWN),
])
def test_increase_sufficient(pair, reason):
    assert increase_sufficient(pair) is reason


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(0, 100))
def test_increase_sufficient_implies_doubling(nu, x0):
    pair = Pair(nu, x0)
    if increase_sufficient(pair) is not IncreaseReason.UNKNOWN:
        t = Tower.for_pair(pair, 4)
        assert all(t.radicand(n).sqrt() is None for n in range(1, 5))


@pytest.mark.parametrize("pair, thin, a", [(Pair(2, 0), True, None), (Pair(2, 1), False, 1), (Pair(4, 3), False, 3)])
def test_is_thin(pair, thin, a):
    r = is_thin(pair)
    assert (r.thin, r.a) == (thin, a)


def test_klein_scan_examples():
    scan = klein_witness_scan(Tower.for_pair(Pair(2, 1), 4), 2)
    assert scan[0] == (0, GaloisType.V4)
    assert all(g is not GaloisType.V4 for _, g in scan[1:])
    scan = klein_witness_scan(Tower.for_pair(Pair(2, 0), 4), 2)
    assert all(g is not GaloisType.V4 for _, g in scan)
    scan = klein_witness_scan(Tower.for_pair(Pair(3, 2), 3), 1)
    assert scan[0] == (0, GaloisType.V4) and scan[1][1] is not GaloisType.V4
    with pytest.raises(ValueError):
        klein_witness_scan(Tower.for_pair(Pair(3, 2), 2), 1)


def test_fn_scan_examples():
    assert all(f == 1 and sq for _, f, sq in fn_scan(Pair(2, 1), 5))
    assert fn_scan(Pair(4, 3), 2)[0] == (1, 1233, False)
    assert fn_scan(Pair(3, 0), 2)[0] == (1, 198, False)
    with pytest.raises(ValueError):
        fn_scan(Pair(3, 0), 0)


def test_ec_scan_examples():
    r = ec_point_scan(Pair(2, 1), 10)
    assert 2 in r.points and 1 in r.points
    assert 12 not in ec_point_scan(Pair(4, 3), 1000).points
    with pytest.raises(ValueError):
        ec_point_scan(Pair(2, 1), 0)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 8), st.integers(0, 40))
def test_ec_scan_brute_force(nu, x0):
    pair = Pair(nu, x0)
    pts = ec_point_scan(pair, 60).points
    want = [X for X in range(-60, 61)
            if (X - x0) * (X * X - nu - x0) >= 0 and is_square_int((X - x0) * (X * X - nu - x0))]
    assert pts == want


@pytest.mark.parametrize("pair", [Pair(2, 1), Pair(4, 3), Pair(3, 2), Pair(6, 5)], ids=str)
def test_fn_squares_show_up_as_curve_points(pair):
    bound = 10**5
    scan = ec_point_scan(pair, bound)
    u = u_seq(pair.nu, 8).values
    for n, f, sq in fn_scan(pair, 6):
        if sq and u[n - 1] <= bound:
            assert u[n - 1] in scan.points


def test_enumerate_omega1_small():
    rows = enumerate_omega1(3, 6)
    assert [(p.nu, p.x0) for p, _, _ in rows] == [(2, 1), (3, 2)]
    assert all(c.status is Status.INC for _, _, c in rows)
    with pytest.raises(ValueError):
        enumerate_omega1(1)


def test_enumerate_omega1_m4_contains_43():
    rows = {(p.nu, p.x0): cert for p, cert, _ in enumerate_omega1(4, 6)}
    assert rows[(4, 3)].a == 3
    assert (3, 5) not in rows


@pytest.fixture(scope="module")
def omega1_10():
    return enumerate_omega1(10, 6)


def test_omega1_invariants(omega1_10):
    for pair, cert, cls in omega1_10:
        assert pair.nu - 1 <= pair.x0 <= pair.nu ** 2 - pair.nu - 1
        assert 1 <= cert.a <= pair.nu - 1 and cert.distinct
        assert cert == omega1_cert(pair)
        if pair.nu >= 4:
            assert cls.status is Status.DEC
        if pair != Pair(2, 1):
            assert 2 * pair.nu ** 2 - 3 * pair.nu > pair.x0 + 1
            u = u_seq(pair.nu, 7).values
            assert not any(is_square_int(u[n] - pair.x0) for n in range(1, 7))


def test_thin_iff_v4_at_zero(omega1_10):
    pairs = [p for p, _, _ in omega1_10] + [Pair(2, 0), Pair(3, 0), Pair(5, 0), Pair(6, 0)]
    for pair in pairs:
        scan = klein_witness_scan(Tower.for_pair(pair, 5), 3)
        assert is_thin(pair).thin == (scan[0][1] is not GaloisType.V4)
        assert all(g is not GaloisType.V4 for _, g in scan[1:])


def test_omega1_infinite_family_mod4():
    for nu in range(2, 21, 2):
        found = any((nu + (nu * nu - nu - (nu - k * k) ** 2)) % 4 in (2, 3)
                    for k in range(1, int((nu - 1) ** 0.5) + 1))
        assert found, nu


def test_sigma12_examples():
    s = enumerate_sigma12(4, 6)
    assert {(p.nu, p.x0, k) for p, k in s.sigma1} >= {(2, 1, 1), (3, 2, 1), (4, 3, 1)}
    s3 = enumerate_sigma12(3, 6)
    assert s3.sigma2 == []
    assert any((p.nu, p.x0) == (3, 5) and name == "sigma2" for name, p, _, _ in s3.rejected)
    assert all(p.nu != 2 for p, _ in enumerate_sigma12(6, 6).sigma2)
