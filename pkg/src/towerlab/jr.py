"""Desk-scale Julia Robinson exploration for the orders ``Z[x_n]``.

All reals here are mpmath intervals; a comparison that the current precision
cannot settle is retried at higher precision and, past the cap, reported as
undecided rather than guessed.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import iv

from .numeric import MAX_DPS, ball_json, default_dps, hi, iv_abs, iv_max, iv_min, lo, precision, to_iv
from .omega import Status, classify_pair, totally_real
from .tower import Pair, Tower


class PreconditionError(ValueError):
    pass


class PrecisionExhausted(RuntimeError):
    pass


def _x_conjugates(tower: Tower, n: int) -> list:
    if n == 0:
        return [to_iv(tower.pair.x0)]
    return [g[-1] for g in tower.embeddings(n)]


def _eval(coeffs: Sequence, x):
    acc = iv.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass
class ConjugateSet:
    pair: Pair
    level: int
    coeffs: tuple[Fraction, ...]
    values: list
    dps: int

    @property
    def min(self):
        return iv_min(self.values)

    @property
    def max(self):
        return iv_max(self.values)


def conjugate_set(pair: Pair, level: int, coeffs: Sequence, dps: Optional[int] = None,
                  tower: Optional[Tower] = None) -> ConjugateSet:
    """All ``2**level`` conjugates of ``sum(coeffs[i] * x_level**i)``."""
    if len(coeffs) > max(1, 2 ** level):
        raise ValueError(f"at most {2 ** level} coefficients at level {level}")
    tower = tower if tower is not None and tower.depth >= level else Tower.for_pair(pair, level)
    if level and not totally_real(pair, level):
        raise PreconditionError(f"{pair} is not totally real at level {level}")
    dps = dps or default_dps()
    cs = tuple(Fraction(c) for c in coeffs)
    with precision(dps):
        civ = [to_iv(c) for c in cs]
        vals = [_eval(civ, x) for x in _x_conjugates(tower, level)]
    return ConjugateSet(pair, level, cs, vals, dps)


def house(cs: ConjugateSet):
    with precision(cs.dps):
        return iv_max(iv_abs(v) for v in cs.values)


def alpha_limit(nu: int, dps: Optional[int] = None):
    """Positive root of ``X^2 - X - nu``, the fixed point of ``x -> sqrt(nu + x)``."""
    if nu < 2:
        raise ValueError("nu must be >= 2")
    with precision(dps or default_dps()):
        return (1 + iv.sqrt(iv.mpf(1 + 4 * nu))) / 2


def _verified_status(pair: Pair, n: int) -> Status:
    cls = classify_pair(pair, n)
    if not cls.in_omega:
        raise PreconditionError(f"{pair} not verified in Omega at depth {n}: {cls}")
    return cls.status


@dataclass
class HouseTrajectory:
    pair: Pair
    status: Status
    alpha: object
    houses: list
    monotone: bool
    contraction: bool
    dps: int

    @property
    def gaps(self) -> list:
        with precision(self.dps):
            return [iv_abs(h - self.alpha) for h in self.houses]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "house", "gap"])
        with precision(self.dps):
            for n, (h, g) in enumerate(zip(self.houses, self.gaps), start=1):
                w.writerow([n, ball_json(h)["mid"], ball_json(g)["mid"]])
        return buf.getvalue()


def house_trajectory(pair: Pair, max_n: int, dps: Optional[int] = None) -> HouseTrajectory:
    """Houses of ``x_1..x_N`` with the monotonicity dictated by the Inc/Dec label."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    status = _verified_status(pair, max_n)
    dps = dps or default_dps()
    tower = Tower.for_pair(pair, max_n)
    houses = [house(conjugate_set(pair, n, (0, 1), dps, tower)) for n in range(1, max_n + 1)]
    alpha = alpha_limit(pair.nu, dps)
    with precision(dps):
        if status is Status.INC:
            monotone = all(hi(a) < lo(b) for a, b in zip(houses, houses[1:]))
        else:
            monotone = all(hi(b) < lo(a) for a, b in zip(houses, houses[1:]))
        gaps = [iv_abs(h - alpha) for h in houses]
        bound = 1 / (2 * alpha - 1)
        contraction = True
        for h, g0, g1 in zip(houses, gaps, gaps[1:]):
            if hi(h) < lo(alpha + 1) and lo(g1) > 0:
                contraction &= hi(g1 / g0) < lo(bound)
    return HouseTrajectory(pair, status, alpha, houses, monotone, contraction, dps)


@dataclass
class OTCensus:
    pair: Pair
    t: Fraction
    level: int
    bound: int
    witnesses: list[tuple[int, int]]
    undecided: list[tuple[int, int]]
    max_dps: int

    @property
    def count(self) -> int:
        return len(self.witnesses)


def _decide(vals: list, t: Fraction) -> Optional[bool]:
    m, M = iv_min(vals), iv_max(vals)
    if lo(m) > 0 and hi(M) < t:
        return True
    if hi(m) <= 0 or lo(M) >= t:
        return False
    return None


def ot_census(pair: Pair, t, level: int, bound: int, dps: Optional[int] = None,
              cap: int = MAX_DPS) -> OTCensus:
    """Elements ``c0 + c1*x_n`` with ``|c_i| <= bound`` and every conjugate in ``(0, t)``.

    Only this degree-1 slice of ``Z[x_n]`` is searched, so counts are lower bounds.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    tower = Tower.for_pair(pair, level)
    if level and not totally_real(pair, level):
        raise PreconditionError(f"{pair} is not totally real at level {level}")
    dps = dps or default_dps()
    rng = range(-bound, bound + 1)
    pending = [(c0, c1) for c0 in rng for c1 in rng]
    witnesses: list[tuple[int, int]] = []
    used = dps
    while pending:
        with precision(used):
            xs = _x_conjugates(tower, level)
            t_iv = to_iv(t)
            retry = []
            for c0, c1 in pending:
                verdict = _decide([c0 + c1 * x for x in xs], t_iv)
                if verdict is None:
                    retry.append((c0, c1))
                elif verdict:
                    witnesses.append((c0, c1))
        pending = retry
        if not pending or used >= cap:
            break
        used = min(cap, used * 2)
    witnesses.sort()
    return OTCensus(pair, t, level, bound, witnesses, sorted(pending), used)


@dataclass
class JRReport:
    pair: Pair
    alpha: object
    shift: int
    family: str
    sup_estimates: list
    decreasing: bool
    jr_upper: object
    limit: object
    dps: int

    def to_json(self) -> dict:
        with precision(self.dps):
            return {
                "pair": [str(self.pair.nu), str(self.pair.x0)],
                "alpha": ball_json(self.alpha),
                "shift": str(self.shift),
                "family": self.family,
                "sup_estimates": [ball_json(s) for s in self.sup_estimates],
                "decreasing": self.decreasing,
                "jr_upper": ball_json(self.jr_upper),
                "limit": ball_json(self.limit),
            }


def jr_upper_estimate(pair: Pair, max_n: int, dps: Optional[int] = None) -> JRReport:
    """Upper estimate ``s + house(x_N)`` from the family ``s + x_n``, ``s = floor(alpha) + 1``."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    status = _verified_status(pair, max_n)
    if status is not Status.DEC:
        raise PreconditionError(
            f"{pair} is {status.value}; the shifted-generator family is only set up "
            "for decreasing towers")
    dps = dps or default_dps()
    alpha = alpha_limit(pair.nu, dps)
    with precision(dps):
        fl = math.floor(lo(alpha))
        if math.floor(hi(alpha)) != fl:
            raise PrecisionExhausted("cannot certify floor(alpha)")
    s = fl + 1
    tower = Tower.for_pair(pair, max_n)
    sups = []
    for n in range(1, max_n + 1):
        cs = conjugate_set(pair, n, (s, 1), dps, tower)
        h = house(conjugate_set(pair, n, (0, 1), dps, tower))
        with precision(dps):
            top = s + h
            # conjugates lie in (0, s + house_n]; the top is attained, so the
            # upper side can only be checked up to the interval width
            if not (lo(cs.min) > 0 and lo(cs.max) <= hi(top)):
                raise PrecisionExhausted(f"conjugates of {s} + x_{n} not certified in (0, {s} + house]")
        sups.append(cs.max)
    with precision(dps):
        decreasing = all(hi(b) < lo(a) for a, b in zip(sups, sups[1:]))
        limit = s + alpha
    return JRReport(pair, alpha, s, f"{s} + x_n", sups, decreasing, sups[-1], limit, dps)
