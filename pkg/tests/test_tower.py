from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

import oracles
from towerlab.exact import UPoly, isolate_real_roots, sturm_count
from towerlab.numeric import hi, lo
from towerlab.tower import (
    Pair,
    Tower,
    conjugates_numeric,
    elem_arith,
    is_square_in_tower,
    min_poly,
    norm_down,
    norm_to_base,
    power_basis,
    u_seq,
)

PAIRS = [Pair(2, 0), Pair(2, 1), Pair(3, 0), Pair(4, 3)]
TOWERS = {p: Tower.for_pair(p, 6) for p in PAIRS}


def small_elems(level: int, max_level: int = 3):
    """Random elements of ``K_level`` with small integer coordinates in the power basis."""
    return st.lists(st.integers(-4, 4), min_size=1, max_size=2 ** level).map(tuple)


def from_coeffs(tower: Tower, level: int, coeffs) -> object:
    x = tower.gen(level) if level else None
    acc = tower.const(0, level)
    for c in reversed(coeffs):
        acc = acc * x + c if level else acc + c
    return acc


def test_pair_validation():
    with pytest.raises(ValueError):
        Pair(1, 0)
    with pytest.raises(ValueError):
        Pair(2, -1)


def test_arith_examples():
    t20 = TOWERS[Pair(2, 0)]
    x1 = t20.gen(1)
    assert (1 + x1) * (1 - x1) == t20.const(-1, 1)
    assert 1 / (1 + x1) == x1 - 1
    assert (1 + x1) * (x1 - 1) == t20.const(1, 1)
    t21 = TOWERS[Pair(2, 1)]
    y = t21.gen(1)
    assert (1 + y) ** 2 == 4 + 2 * y


def test_elem_arith_errors():
    t = TOWERS[Pair(2, 0)]
    with pytest.raises(ValueError):
        elem_arith("mul", t.gen(1), t.gen(2))
    with pytest.raises(ZeroDivisionError):
        elem_arith("div", t.gen(1), t.const(0, 1))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(1, 3), st.data())
def test_field_axioms(pair, level, data):
    t = TOWERS[pair]
    a = from_coeffs(t, level, data.draw(small_elems(level)))
    b = from_coeffs(t, level, data.draw(small_elems(level)))
    c = from_coeffs(t, level, data.draw(small_elems(level)))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a


def test_norm_down_examples():
    t30 = TOWERS[Pair(3, 0)]
    assert norm_down(6 - t30.gen(1)) == t30.const(33, 0)
    t21 = TOWERS[Pair(2, 1)]
    assert norm_down(t21.gen(1)) == t21.const(-3, 0)
    with pytest.raises(ValueError):
        norm_down(t21.const(1, 0))


def test_norm_to_base_examples():
    t21 = TOWERS[Pair(2, 1)]
    assert norm_to_base(2 - t21.gen(2), 0) == t21.const(1, 0)
    t30 = TOWERS[Pair(3, 0)]
    assert norm_to_base(6 - t30.gen(2), 0) == t30.const(1086, 0)
    x = t30.gen(3)
    assert norm_to_base(x, 3) == x
    with pytest.raises(ValueError):
        norm_to_base(t30.gen(1), 2)


@pytest.mark.parametrize("pair", PAIRS, ids=str)
def test_norm_of_nu_plus_x(pair):
    t = TOWERS[pair]
    for n in range(1, 6):
        assert norm_down(pair.nu + t.gen(n)) == pair.u0 - t.gen(n - 1, n - 1)


@pytest.mark.parametrize("pair", PAIRS, ids=str)
def test_norm_composition(pair):
    t = TOWERS[pair]
    x = 3 + t.gen(4) - 2 * t.gen(2, 4) + t.gen(4) * t.gen(1, 4)
    y = x
    for _ in range(3):
        y = norm_down(y)
    assert norm_to_base(x, 1) == y


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(1, 3), st.data())
def test_norm_matches_resultant(pair, level, data):
    coeffs = data.draw(small_elems(level))
    t = TOWERS[pair]
    mine = norm_to_base(from_coeffs(t, level, coeffs), 0).rational()
    assert sp.Rational(mine.numerator, mine.denominator) == oracles.norm_to_q(pair.nu, pair.x0, level, coeffs)


def test_square_examples():
    t20 = TOWERS[Pair(2, 0)]
    w = is_square_in_tower(3 + 2 * t20.gen(1))
    assert w is not None and w * w == 3 + 2 * t20.gen(1)
    assert w in (1 + t20.gen(1), -1 - t20.gen(1))
    t21 = TOWERS[Pair(2, 1)]
    assert is_square_in_tower(2 - t21.gen(1)) is None
    t43 = TOWERS[Pair(4, 3)]
    w = is_square_in_tower(t43.const(2, 2))
    assert w is not None and w * w == t43.const(2, 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(0, 3), st.data())
def test_square_of_anything_is_found(pair, level, data):
    t = TOWERS[pair]
    a = from_coeffs(t, level, data.draw(small_elems(level)))
    w = is_square_in_tower(a * a)
    assert w is not None and w * w == a * a


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(1, 3), st.data())
def test_square_soundness_and_norm_obstruction(pair, level, data):
    t = TOWERS[pair]
    s = from_coeffs(t, level, data.draw(small_elems(level)))
    w = is_square_in_tower(s)
    if w is not None:
        assert w * w == s
    if is_square_in_tower(norm_down(s)) is None:
        assert w is None


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(1, 2), st.data())
def test_square_matches_sympy_factorisation(pair, level, data):
    coeffs = data.draw(small_elems(level))
    t = TOWERS[pair]
    s = from_coeffs(t, level, coeffs)
    g = oracles.tower_gen(pair.nu, pair.x0, level)
    value = sum(sp.Integer(c) * g ** i for i, c in enumerate(coeffs))
    assert (is_square_in_tower(s) is not None) == oracles.is_square_in_field(sp.expand(value), g)


def test_min_poly_examples():
    t20 = Tower.for_pair(Pair(2, 0), 3)
    assert min_poly(t20, 2) == UPoly((2, 0, -4, 0, 1))
    assert min_poly(t20, 3) == UPoly((2, 0, -16, 0, 20, 0, -8, 0, 1))
    assert min_poly(Tower.for_pair(Pair(2, 1), 2), 2) == UPoly((1, 0, -4, 0, 1))


@pytest.mark.parametrize("pair", PAIRS, ids=str)
def test_min_poly_matches_sympy(pair):
    t = TOWERS[pair]
    for n in range(1, 4):
        assert list(t.min_poly(n).coeffs) == oracles.tower_min_poly(pair.nu, pair.x0, n)
        assert oracles.is_irreducible_over_q(oracles.tower_min_poly(pair.nu, pair.x0, n))


@pytest.mark.parametrize("pair", PAIRS, ids=str)
def test_degree_doubling_and_irreducibility(pair):
    t = TOWERS[pair]
    for n in range(1, 4):
        doubles = t.radicand(n).sqrt() is None
        assert doubles == oracles.is_irreducible_over_q([int(c) for c in t.min_poly(n).coeffs])


def test_degree_collapse_detected():
    t = Tower.for_pair(Pair(5, 4), 2)
    assert t.radicand(1).sqrt() is not None
    assert not oracles.is_irreducible_over_q([int(c) for c in t.min_poly(1).coeffs])


@pytest.mark.parametrize("pair", PAIRS, ids=str)
def test_min_poly_vanishes_on_conjugates(pair):
    t = TOWERS[pair]
    for n in range(1, 5):
        p = t.min_poly(n)
        assert sturm_count(p) == 2 ** n
        for v in conjugates_numeric(pair, n, [0, 1], 50, t):
            with mp.workdps(50):
                val = mpf(0)
                x = (lo(v) + hi(v)) / 2
                for c in reversed(p.coeffs):
                    val = val * x + mpf(c.numerator) / c.denominator
                assert abs(val) < mpf(10) ** -35


def test_conjugates_examples():
    vals = conjugates_numeric(Pair(2, 0), 1, [0, 1])
    assert sorted(float((lo(v) + hi(v)) / 2) for v in vals) == pytest.approx([-2 ** 0.5, 2 ** 0.5])
    vals = sorted(float(lo(v)) for v in conjugates_numeric(Pair(4, 3), 1, [3, 1]))
    assert vals == pytest.approx([3 - 7 ** 0.5, 3 + 7 ** 0.5])
    assert all(0 < v < 6 for v in vals)
    vals = conjugates_numeric(Pair(2, 0), 2, [0, 1])
    boxes = isolate_real_roots(UPoly((2, 0, -4, 0, 1)))
    with mp.workdps(45):
        mids = sorted((lo(v) + hi(v)) / 2 for v in vals)
        assert len(set(mids)) == 4
        for m, (a, b) in zip(mids, boxes):
            assert abs(m - mpf(a.numerator) / a.denominator) < mpf(10) ** -29


def test_conjugates_precondition():
    with pytest.raises(ValueError):
        conjugates_numeric(Pair(2, 0), 1, [1, 2, 3])
    # x_2 for (2, 14): nu + x_1 = 2 - 4 < 0 in one embedding
    with pytest.raises(ValueError):
        conjugates_numeric(Pair(2, 14), 2, [0, 1])


def test_u_seq_examples():
    assert u_seq(2, 4).values == (2, 2, 2, 2)
    assert u_seq(3, 3).values == (6, 33, 1086)
    assert u_seq(4, 2).values == (12, 140)


@given(st.integers(3, 50), st.integers(2, 6))
def test_u_seq_increasing(nu, count):
    v = u_seq(nu, count).values
    assert all(a < b for a, b in zip(v, v[1:]))
    assert all(b == a * a - nu for a, b in zip(v, v[1:]))


@pytest.mark.parametrize("pair", PAIRS, ids=str)
def test_power_basis_round_trip(pair):
    t = TOWERS[pair]
    x = (2 + t.gen(3)) * (1 - t.gen(1, 3)) + Fraction(1, 3) * t.gen(2, 3)
    p = power_basis(x)
    assert p.degree < 8
    assert from_coeffs(t, 3, list(p.coeffs)) == x


def test_printer():
    t20 = TOWERS[Pair(2, 0)]
    assert str(1 + t20.gen(1)) == "1 + sqrt(2)"
    assert str(1 + 2 * t20.gen(2)) == "1 + 2*sqrt(2+sqrt(2))"
