"""Biquadratic quartics ``X^4 + bX^2 + d`` over tower fields.

Characteristic is 0 throughout, so the usual char != 2 hypothesis holds.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import is_square_int
from .tower import Pair, Tower, TowerElem, is_square_in_tower


class GaloisType(str, enum.Enum):
    REDUCIBLE = "Reducible"
    V4 = "V4"
    C4 = "C4"
    D4 = "D4"

    def __str__(self) -> str:
        return self.value


def _over(b, d, level: Optional[int], tower: Optional[Tower]) -> tuple[TowerElem, TowerElem]:
    if isinstance(b, TowerElem) and isinstance(d, TowerElem):
        if b.level != d.level:
            raise ValueError("b and d must live at the same level")
        return b, d
    anchor = b if isinstance(b, TowerElem) else d if isinstance(d, TowerElem) else None
    if anchor is None:
        tower = tower or Tower([])
        level = 0 if level is None else level
        return tower.const(b, level), tower.const(d, level)
    return anchor._check(b), anchor._check(d)


def biquad_irreducible(b, d, level: Optional[int] = None, tower: Optional[Tower] = None,
                       fast: bool = True) -> bool:
    """Whether ``X^4 + bX^2 + d`` is irreducible over the field holding ``b, d``.

    Rational ``b, d`` are read as elements of Q.  With ``fast`` the shortcut
    "``b^2-4d`` and ``d`` both non-squares implies irreducible" is taken; without
    it the ``-b +- 2 sqrt(d)`` conditions are tested in ``K(sqrt(d))``.
    """
    b, d = _over(b, d, level, tower)
    if is_square_in_tower(b * b - 4 * d) is not None:
        return False
    root_d = is_square_in_tower(d)
    if root_d is not None:
        return (is_square_in_tower(-b + 2 * root_d) is None
                and is_square_in_tower(-b - 2 * root_d) is None)
    if fast:
        return True
    ext = d.tower.extend(d) if d.level == d.tower.depth else _truncate(d.tower, d.level).extend(d)
    s = ext.gen(ext.depth)
    bb = ext.const(0) + TowerElem(ext, d.level, b.raw).lift(ext.depth)
    return (is_square_in_tower(-bb + 2 * s) is None
            and is_square_in_tower(-bb - 2 * s) is None)


def _truncate(tower: Tower, level: int) -> Tower:
    return Tower(tower.rad[1:level + 1], gen_names=tower.gen_names[:level])


def biquad_galois_type(b, d, level: Optional[int] = None, tower: Optional[Tower] = None,
                       fast: bool = True) -> GaloisType:
    b, d = _over(b, d, level, tower)
    if not biquad_irreducible(b, d, fast=fast):
        return GaloisType.REDUCIBLE
    if is_square_in_tower(d) is not None:
        return GaloisType.V4
    if is_square_in_tower(d * (b * b - 4 * d)) is not None:
        return GaloisType.C4
    return GaloisType.D4


@dataclass(frozen=True)
class Step2Report:
    level: int
    galois: GaloisType
    un_minus_x0: int
    un_square: bool
    fn: Optional[int]
    fn_square: Optional[bool]


def step2_galois_type(ctx: Tower, n: int) -> Step2Report:
    """Galois type of ``K_{n+2}/K_n`` from ``X^4 - 2 nu X^2 + u_0 - x_n``.

    Also reports the rational shortcuts: ``u_n - x0`` a square is necessary for
    V4 (by the norm identity) and ``f_n`` a square is necessary for C4.
    """
    pair = ctx.pair
    if pair is None:
        raise ValueError("step2_galois_type needs a pair tower")
    if ctx.depth < n + 2:
        raise ValueError(f"tower depth {ctx.depth} below n+2 = {n + 2}")
    b = ctx.const(-2 * pair.nu, n)
    d = pair.u0 - ctx.gen(n)
    g = biquad_galois_type(b, d)
    u = [pair.u0]
    for _ in range(n):
        u.append(u[-1] ** 2 - pair.nu)
    un = u[n] - pair.x0
    fn = (u[n - 1] - pair.x0) * un if n >= 1 else None
    return Step2Report(n, g, un, is_square_int(un), fn,
                       None if fn is None else is_square_int(fn))


def klein_over_yeps(pair: Pair, eps: int) -> bool:
    """Whether ``K_3 / Q(y_eps)`` can be Klein, ``y_eps = sqrt(2(nu + eps*a))``.

    Decided by whether ``a^2 + nu^4 - 2 nu^3`` is a perfect square.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    diff = pair.u0 - pair.x0
    if diff <= 0 or not is_square_int(diff):
        raise ValueError(f"{pair} is not in Omega^1 (u0 - x0 = {diff} is not a positive square)")
    a2 = diff
    return is_square_int(a2 + pair.nu ** 4 - 2 * pair.nu ** 3)


def quartic_over_q(b: int, d: int, fast: bool = True) -> GaloisType:
    return biquad_galois_type(Fraction(b), Fraction(d), fast=fast)
