from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from towerlab.exact import (
    UPoly,
    factorize,
    isolate_real_roots,
    isqrt,
    poly_step,
    rat_is_square,
    square_free_part,
    sturm_count,
)

X = UPoly.x()


@pytest.mark.parametrize("n, expected", [(16, (4, True)), (17, (4, False)), (0, (0, True))])
def test_isqrt_examples(n, expected):
    assert isqrt(n) == expected


def test_isqrt_rejects_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=10**40))
def test_isqrt_bracket(n):
    r, exact = isqrt(n)
    assert r * r <= n < (r + 1) ** 2
    assert exact == (r * r == n)


@pytest.mark.parametrize("n, s", [(392, 2), (12, 3), (7, 7), (-12, -3), (1, 1)])
def test_square_free_part_examples(n, s):
    assert square_free_part(n) == s == oracles.square_free_part(n)


def test_square_free_part_rejects_zero():
    with pytest.raises(ValueError):
        square_free_part(0)


@given(st.integers(min_value=-10**6, max_value=10**6).filter(bool), st.integers(min_value=1, max_value=10**4))
def test_square_free_part_ignores_square_factors(n, k):
    assert square_free_part(n * k * k) == square_free_part(n)


@settings(max_examples=40)
@given(st.integers(min_value=2, max_value=10**15))
def test_square_free_part_matches_factorint(n):
    assert square_free_part(n) == oracles.square_free_part(n)


def test_factorize_large_semiprime():
    p, q = 1_000_003, 998_244_353
    assert factorize(p * q) == {p: 1, q: 1}


@pytest.mark.parametrize("q, w", [(Fraction(4, 9), Fraction(2, 3)), (2, None), (0, 0), (-4, None)])
def test_rat_is_square_examples(q, w):
    assert rat_is_square(q) == w


@given(st.fractions(max_denominator=10**6))
def test_rat_is_square_of_square(q):
    assert rat_is_square(q * q) == abs(q)


@pytest.mark.parametrize("coeffs, count", [((-2, 0, 1), 2), ((2, 0, -4, 0, 1), 4), ((1, 0, 1), 0)])
def test_sturm_examples(coeffs, count):
    assert sturm_count(UPoly(coeffs)) == count


def test_sturm_rejects_zero():
    with pytest.raises(ValueError):
        sturm_count(UPoly(()))


def test_sturm_half_open_interval():
    p = (X - 1) * (X - 2) * (X - 3)
    assert sturm_count(p, 1, 3) == 2  # roots in (1, 3]
    assert sturm_count(p, 0, 1) == 1
    assert sturm_count(p, None, Fraction(5, 2)) == 2
    assert sturm_count(p, Fraction(5, 2), float("inf")) == 1


def test_sturm_repeated_roots():
    p = (X - 1) ** 3 * (X + 2) ** 2 * (X * X + 1)
    assert sturm_count(p) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=-6, max_value=6), min_size=2, max_size=9).filter(lambda c: c[-1] != 0))
def test_sturm_matches_independent_root_count(coeffs):
    assert sturm_count(UPoly(coeffs)) == oracles.real_root_count(coeffs)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(min_value=-6, max_value=6), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_isolated_roots_bracket_numeric_roots(coeffs):
    boxes = isolate_real_roots(UPoly(coeffs), Fraction(1, 10**20))
    roots = oracles.numeric_real_roots(coeffs, 40)
    assert len(boxes) == len(roots)
    for (lo, hi), r in zip(boxes, roots):
        assert float(lo) - 1e-15 <= float(r) <= float(hi) + 1e-15


@pytest.mark.parametrize("p, nu, expected", [
    (X, 2, X * X - 2),
    (X * X - 2, 2, UPoly((2, 0, -4, 0, 1))),
    (X - 1, 2, X * X - 3),
])
def test_poly_step_examples(p, nu, expected):
    assert poly_step(p, nu) == expected


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6).filter(lambda c: c[-1] != 0), st.integers(2, 30))
def test_poly_step_doubles_degree(coeffs, nu):
    p = UPoly(coeffs)
    q = poly_step(p, nu)
    assert q.degree == 2 * p.degree
    # composition really is P(X^2 - nu)
    for t in (-2, 0, 3):
        assert q(Fraction(t)) == p(Fraction(t * t - nu))


def test_upoly_normalised():
    assert UPoly((1, 2, 0, 0)).degree == 1
    assert UPoly(()).is_zero and UPoly((0,)).is_zero
    assert str(UPoly((2, 0, -4, 0, 1))) == "X^4 - 4*X^2 + 2"


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6), st.lists(st.integers(-9, 9), min_size=1, max_size=4))
def test_upoly_division_identity(a, b):
    pa, pb = UPoly(a), UPoly(b)
    if pb.is_zero:
        return
    q, r = divmod(pa, pb)
    assert q * pb + r == pa
    assert r.is_zero or r.degree < pb.degree
