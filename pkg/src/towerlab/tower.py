"""Exact arithmetic in towers of quadratic extensions.

A :class:`Tower` is a chain ``Q = L_0 < L_1 < ... < L_n`` where the generator
``x_k`` of ``L_k`` satisfies ``x_k**2 = c_k`` for a radicand ``c_k`` in
``L_{k-1}``.  For a pair ``(nu, x0)`` the radicands are ``c_1 = nu + x0`` and
``c_k = nu + x_{k-1}``, which gives ``K_n = Q(x_n)``.  Ad-hoc towers (one extra
level with an arbitrary radicand) reuse the same machinery, e.g. ``K_n(sqrt(d))``.

Elements are stored recursively: a Fraction at level 0, a pair ``(a, b)`` of
level ``k-1`` data meaning ``a + b*x_k`` at level ``k``.  The raw helpers below
operate on that nested data; :class:`TowerElem` wraps it with operators.

Every routine assumes each radicand is a non-square in the level below, so that
each ``L_k`` really is a field.  :func:`towerlab.omega.classify_pair` checks
that for pair towers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import iv

from .exact import UPoly, poly_step, rat_is_square, sturm_count
from .numeric import default_dps, precision, to_iv

_HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class Pair:
    """Parameters ``(nu, x0)`` of the tower ``x_{n+1} = sqrt(nu + x_n)``."""

    nu: int
    x0: int

    def __post_init__(self):
        if self.nu < 2 or self.x0 < 0:
            raise ValueError(f"pair needs nu >= 2 and x0 >= 0, got ({self.nu}, {self.x0})")

    @property
    def u0(self) -> int:
        return self.nu * self.nu - self.nu

    def __str__(self) -> str:
        return f"({self.nu},{self.x0})"


@dataclass(frozen=True)
class USeq:
    nu: int
    values: tuple[int, ...]


def u_seq(nu: int, count: int) -> USeq:
    """First ``count`` terms of ``u_0 = nu^2 - nu``, ``u_{k+1} = u_k^2 - nu``."""
    if nu < 2 or count < 1:
        raise ValueError("u_seq needs nu >= 2 and count >= 1")
    vals = [nu * nu - nu]
    for _ in range(count - 1):
        vals.append(vals[-1] ** 2 - nu)
    return USeq(nu, tuple(vals))


# --- raw nested arithmetic ---------------------------------------------------

_ZEROS: list = [Fraction(0)]


def zero(k: int):
    while len(_ZEROS) <= k:
        z = _ZEROS[-1]
        _ZEROS.append((z, z))
    return _ZEROS[k]


def const(q, k: int):
    q = Fraction(q)
    for i in range(k):
        q = (q, _ZEROS[i] if i < len(_ZEROS) else zero(i))
    return q


def is_zero(x, k: int) -> bool:
    return x == zero(k)


def lift(x, k: int, target: int):
    for i in range(k, target):
        x = (x, zero(i))
    return x


def add(x, y, k: int):
    if k == 0:
        return x + y
    return (add(x[0], y[0], k - 1), add(x[1], y[1], k - 1))


def sub(x, y, k: int):
    if k == 0:
        return x - y
    return (sub(x[0], y[0], k - 1), sub(x[1], y[1], k - 1))


def neg(x, k: int):
    if k == 0:
        return -x
    return (neg(x[0], k - 1), neg(x[1], k - 1))


def scale(x, q: Fraction, k: int):
    if k == 0:
        return x * q
    return (scale(x[0], q, k - 1), scale(x[1], q, k - 1))


def mul(x, y, k: int, rad: Sequence):
    if k == 0:
        return x * y
    z = zero(k - 1)
    a, b = x
    c, d = y
    if b == z:
        if d == z:
            return (mul(a, c, k - 1, rad), z)
        return (mul(a, c, k - 1, rad), mul(a, d, k - 1, rad))
    if d == z:
        return (mul(a, c, k - 1, rad), mul(b, c, k - 1, rad))
    ac = mul(a, c, k - 1, rad)
    bd = mul(b, d, k - 1, rad)
    cross = sub(sub(mul(add(a, b, k - 1), add(c, d, k - 1), k - 1, rad), ac, k - 1), bd, k - 1)
    return (add(ac, mul(rad[k], bd, k - 1, rad), k - 1), cross)


def norm_raw(x, k: int, rad: Sequence):
    """``(a + b x_k)(a - b x_k) = a^2 - c_k b^2`` at level ``k-1``."""
    a, b = x
    return sub(mul(a, a, k - 1, rad), mul(rad[k], mul(b, b, k - 1, rad), k - 1, rad), k - 1)


def inv(x, k: int, rad: Sequence):
    if k == 0:
        if x == 0:
            raise ZeroDivisionError("division by zero in tower")
        return 1 / x
    n = norm_raw(x, k, rad)
    assert not is_zero(n, k - 1), "zero norm of a nonzero element: radicand is a square"
    ninv = inv(n, k - 1, rad)
    return (mul(x[0], ninv, k - 1, rad), neg(mul(x[1], ninv, k - 1, rad), k - 1))


def sqrt_raw(s, k: int, rad: Sequence, cache: Optional[dict] = None):
    """A square root of ``s`` at level ``k`` or None."""
    if k == 0:
        return rat_is_square(s)
    key = (s, k)
    if cache is not None and key in cache:
        return cache[key]
    out = _sqrt_step(s, k, rad, cache)
    if cache is not None:
        cache[key] = out
    return out


def _sqrt_step(s, k: int, rad: Sequence, cache):
    a, b = s
    c = rad[k]
    z = zero(k - 1)
    if b == z:
        w = sqrt_raw(a, k - 1, rad, cache)
        if w is not None:
            return (w, z)
        # a/c is a square iff a*c is; then (w/c)^2 * c = a
        w = sqrt_raw(mul(a, c, k - 1, rad), k - 1, rad, cache)
        if w is not None:
            return (z, mul(w, inv(c, k - 1, rad), k - 1, rad))
        return None
    disc = norm_raw(s, k, rad)
    delta = sqrt_raw(disc, k - 1, rad, cache)
    if delta is None:
        return None
    for d in (delta, neg(delta, k - 1)):
        u = sqrt_raw(scale(add(a, d, k - 1), _HALF, k - 1), k - 1, rad, cache)
        if u is not None and u != z:
            v = mul(b, inv(scale(u, Fraction(2), k - 1), k - 1, rad), k - 1, rad)
            return (u, v)
    return None


# --- towers ------------------------------------------------------------------


class Tower:
    """Chain of quadratic extensions with radicands ``c_1, ..., c_n``."""

    def __init__(self, radicands: Sequence, pair: Optional[Pair] = None,
                 gen_names: Optional[Sequence[str]] = None):
        self.rad: tuple = (None,) + tuple(radicands)
        self.pair = pair
        self._sqrt_cache: dict = {}
        self._emb_cache: dict = {}
        self._polys: list[UPoly] = []
        names = list(gen_names) if gen_names else []
        for k in range(len(names) + 1, self.depth + 1):
            names.append(f"sqrt({_compact(format_raw(self.rad[k], k - 1, names))})")
        self.gen_names: tuple[str, ...] = tuple(names)

    @classmethod
    def for_pair(cls, pair: Pair, max_level: int) -> Tower:
        rads = []
        for k in range(1, max_level + 1):
            if k == 1:
                rads.append(Fraction(pair.nu + pair.x0))
            else:
                # nu + x_{k-1} at level k-1
                rads.append((const(pair.nu, k - 2), const(1, k - 2)))
        tower = cls(rads, pair=pair)
        tower._polys.append(UPoly((-pair.x0, 1)))
        return tower

    @property
    def depth(self) -> int:
        return len(self.rad) - 1

    def extend(self, radicand: TowerElem, name: Optional[str] = None) -> Tower:
        """One more level whose generator squares to ``radicand``."""
        if radicand.level > self.depth:
            raise ValueError("radicand lives above the top of the tower")
        raw = lift(radicand.raw, radicand.level, self.depth)
        names = list(self.gen_names)
        if name is not None:
            names.append(name)
        return Tower(self.rad[1:] + (raw,), gen_names=names)

    def prefix(self, level: int) -> tuple:
        return self.rad[1:level + 1]

    def const(self, q, level: Optional[int] = None) -> TowerElem:
        level = self.depth if level is None else level
        return TowerElem(self, level, const(q, level))

    def gen(self, k: int, level: Optional[int] = None) -> TowerElem:
        """The generator ``x_k``; ``x_0`` is the rational ``x0`` for pair towers."""
        level = k if level is None else level
        if k == 0:
            if self.pair is None:
                raise ValueError("x_0 is only defined for pair towers")
            return self.const(self.pair.x0, level)
        raw = (zero(k - 1), const(1, k - 1))
        return TowerElem(self, level, lift(raw, k, level))

    def radicand(self, k: int) -> TowerElem:
        return TowerElem(self, k - 1, self.rad[k])

    def min_poly(self, n: int) -> UPoly:
        if self.pair is None:
            raise ValueError("minimal polynomials are tracked for pair towers only")
        if n > self.depth:
            raise ValueError(f"level {n} above tower depth {self.depth}")
        # built on demand: P_12 has degree 4096 and is rarely needed
        while len(self._polys) <= n:
            self._polys.append(poly_step(self._polys[-1], self.pair.nu))
        return self._polys[n]

    def embeddings(self, level: int) -> list[tuple]:
        """All ``2**level`` real generator assignments, as interval tuples.

        Patterns are ordered with the sign of ``x_1`` most significant, ``+``
        before ``-``.  Call inside :func:`towerlab.numeric.precision`; results
        are cached per working precision.
        """
        levels = self._emb_cache.setdefault(iv.prec, [[()]])
        for k in range(len(levels), level + 1):
            terms = [(to_iv(c), mask) for c, mask in monomials(self.rad[k], k - 1)]
            nxt = []
            for gens in levels[-1]:
                acc = iv.mpf(0)
                for c, mask in terms:
                    for i, g in enumerate(gens):
                        if mask >> i & 1:
                            c = c * g
                    acc = acc + c
                r = iv.sqrt(acc)
                nxt.append(gens + (r,))
                nxt.append(gens + (-r,))
            levels.append(nxt)
        return levels[level]


def monomials(x, k: int, mask: int = 0) -> list[tuple[Fraction, int]]:
    """Nonzero terms of a level-``k`` raw element as ``(coeff, generator bitmask)``."""
    if k == 0:
        return [(x, mask)] if x else []
    a, b = x
    out = monomials(a, k - 1, mask) if a != zero(k - 1) else []
    if b != zero(k - 1):
        out += monomials(b, k - 1, mask | 1 << (k - 1))
    return out


def eval_raw(x, k: int, gens: Sequence):
    if k == 0:
        return to_iv(x)
    # radicands are sparse; skipping zero halves keeps this linear in k for them
    a, b = x
    out = eval_raw(a, k - 1, gens) if a != zero(k - 1) else iv.mpf(0)
    if b != zero(k - 1):
        out = out + eval_raw(b, k - 1, gens) * gens[k - 1]
    return out


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _compact(s: str) -> str:
    return s.replace(" ", "")


def format_raw(x, k: int, names: Sequence[str]) -> str:
    if k == 0:
        return _fmt_rat(x)
    a, b = x
    z = zero(k - 1)
    terms = []
    if a != z:
        terms.append(format_raw(a, k - 1, names))
    if b != z:
        gen = names[k - 1]
        if _is_rational(b, k - 1):
            q = _rational_value(b, k - 1)
            if q == 1:
                terms.append(gen)
            elif q == -1:
                terms.append(f"-{gen}")
            else:
                terms.append(f"{_fmt_rat(q)}*{gen}")
        else:
            terms.append(f"({format_raw(b, k - 1, names)})*{gen}")
    if not terms:
        return "0"
    s = " + ".join(terms)
    return s.replace("+ -", "- ")


def _is_rational(x, k: int) -> bool:
    for i in range(k, 0, -1):
        if x[1] != zero(i - 1):
            return False
        x = x[0]
    return True


def _rational_value(x, k: int) -> Fraction:
    for _ in range(k):
        x = x[0]
    return x


@dataclass(frozen=True, eq=False)
class TowerElem:
    """Element of level ``level`` of a :class:`Tower`."""

    tower: Tower
    level: int
    raw: object = field(repr=False)

    def _check(self, other) -> TowerElem:
        if isinstance(other, (int, Fraction)):
            return self.tower.const(other, self.level)
        if not isinstance(other, TowerElem):
            raise TypeError(f"cannot combine TowerElem with {type(other).__name__}")
        if other.level != self.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")
        if other.tower is not self.tower and other.tower.prefix(self.level) != self.tower.prefix(self.level):
            raise ValueError("elements belong to different towers")
        return other

    def _new(self, raw) -> TowerElem:
        return TowerElem(self.tower, self.level, raw)

    def __add__(self, other):
        other = self._check(other)
        return self._new(add(self.raw, other.raw, self.level))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return self._new(sub(self.raw, other.raw, self.level))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return self._new(neg(self.raw, self.level))

    def __mul__(self, other):
        other = self._check(other)
        return self._new(mul(self.raw, other.raw, self.level, self.tower.rad))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.tower.const(1, self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> TowerElem:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in tower")
        return self._new(inv(self.raw, self.level, self.tower.rad))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.raw == const(other, self.level)
        if not isinstance(other, TowerElem):
            return NotImplemented
        if other.level != self.level:
            return False
        if other.tower is not self.tower and other.tower.prefix(self.level) != self.tower.prefix(self.level):
            return False
        return self.raw == other.raw

    def __hash__(self):
        return hash((self.level, self.raw))

    def is_zero(self) -> bool:
        return is_zero(self.raw, self.level)

    def is_rational(self) -> bool:
        return self.level == 0 or _is_rational(self.raw, self.level)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return _rational_value(self.raw, self.level)

    def lift(self, level: int) -> TowerElem:
        if level < self.level:
            raise ValueError("cannot lift to a lower level")
        if level > self.tower.depth:
            raise ValueError(f"level {level} above tower depth {self.tower.depth}")
        return TowerElem(self.tower, level, lift(self.raw, self.level, level))

    def drop(self) -> TowerElem:
        """Same element one level down, when its top coefficient vanishes."""
        if self.level == 0 or self.raw[1] != zero(self.level - 1):
            raise ValueError("element does not lie in the level below")
        return TowerElem(self.tower, self.level - 1, self.raw[0])

    def lowest(self) -> TowerElem:
        x = self
        while x.level > 0 and x.raw[1] == zero(x.level - 1):
            x = x.drop()
        return x

    @property
    def parts(self) -> tuple[TowerElem, TowerElem]:
        if self.level == 0:
            raise ValueError("level-0 element has no parts")
        return (TowerElem(self.tower, self.level - 1, self.raw[0]),
                TowerElem(self.tower, self.level - 1, self.raw[1]))

    def norm_down(self) -> TowerElem:
        return norm_down(self)

    def sqrt(self) -> Optional[TowerElem]:
        return is_square_in_tower(self)

    def numeric(self, dps: Optional[int] = None) -> list:
        """Values under all ``2**level`` real embeddings (interval-certified)."""
        with precision(dps or default_dps()):
            return [eval_raw(self.raw, self.level, g) for g in self.tower.embeddings(self.level)]

    def __str__(self) -> str:
        return format_raw(self.raw, self.level, self.tower.gen_names)

    def __repr__(self) -> str:
        return f"TowerElem(level={self.level}, {self})"


def elem_arith(op: str, x: TowerElem, y: TowerElem) -> TowerElem:
    ops = {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    if isinstance(y, TowerElem) and y.level != x.level:
        raise ValueError(f"level mismatch: {x.level} vs {y.level}")
    return ops[op](y)


def norm_down(x: TowerElem) -> TowerElem:
    if x.level == 0:
        raise ValueError("norm_down of a level-0 element")
    return TowerElem(x.tower, x.level - 1, norm_raw(x.raw, x.level, x.tower.rad))


def norm_to_base(x: TowerElem, level: int) -> TowerElem:
    if level > x.level:
        raise ValueError(f"target level {level} above element level {x.level}")
    while x.level > level:
        x = norm_down(x)
    return x


def is_square_in_tower(s: TowerElem) -> Optional[TowerElem]:
    w = sqrt_raw(s.raw, s.level, s.tower.rad, s.tower._sqrt_cache)
    if w is None:
        return None
    return TowerElem(s.tower, s.level, w)


def min_poly(ctx: Tower, n: int) -> UPoly:
    return ctx.min_poly(n)


def power_basis(x: TowerElem) -> UPoly:
    """Polynomial ``p`` of degree ``< 2**n`` with ``x = p(x_n)`` (pair towers)."""
    pair = x.tower.pair
    if pair is None:
        raise ValueError("power basis is defined for pair towers")
    n = x.level

    def conv(raw, k: int) -> UPoly:
        # polynomial in x_k
        if k == 0:
            return UPoly.const(raw)
        a = conv(raw[0], k - 1)
        b = conv(raw[1], k - 1)
        inner = UPoly((-pair.nu, 0, 1))  # x_{k-1} = x_k^2 - nu
        return a.compose(inner) + b.compose(inner) * UPoly.x()

    if n == 0:
        return UPoly.const(x.raw)
    return conv(x.raw, n)


def is_totally_real(tower: Tower, n: int) -> bool:
    return sturm_count(tower.min_poly(n)) == 2 ** n


def conjugates_numeric(pair: Pair, n: int, coeffs: Sequence, precision_dps: Optional[int] = None,
                       tower: Optional[Tower] = None) -> list:
    """Values of ``sum(coeffs[i] * x_n**i)`` under all ``2**n`` sign patterns."""
    if len(coeffs) > max(1, 2 ** n):
        raise ValueError(f"at most {2 ** n} coefficients at level {n}")
    tower = tower if tower is not None and tower.depth >= n else Tower.for_pair(pair, n)
    if not is_totally_real(tower, n):
        raise ValueError(f"tower {pair} is not totally real at level {n}")
    cs = [Fraction(c) for c in coeffs]
    with precision(precision_dps or default_dps()):
        out = []
        for gens in tower.embeddings(n):
            xn = gens[-1] if n else to_iv(pair.x0)
            acc = iv.mpf(0)
            for c in reversed(cs):
                acc = acc * xn + to_iv(c)
            out.append(acc)
        return out
