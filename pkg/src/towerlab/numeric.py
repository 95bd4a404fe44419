"""Certified real numbers as mpmath intervals (ball arithmetic by another name)."""
from __future__ import annotations

import os
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator

from mpmath import iv, mp, mpf

DEFAULT_DPS = 40
MAX_DPS = 256


def default_dps() -> int:
    env = os.environ.get("TOWERLAB_PRECISION")
    return int(env) if env else DEFAULT_DPS


@contextmanager
def precision(dps: int) -> Iterator[None]:
    """Temporarily set the working precision of the interval context."""
    # mpmath's iv context has no workdps; iv state is process-global
    old = iv.prec
    iv.dps = dps
    try:
        yield
    finally:
        iv.prec = old


def to_iv(q) -> iv.mpf:
    if isinstance(q, Fraction):
        return iv.mpf(q.numerator) / iv.mpf(q.denominator)
    return iv.mpf(q)


# make_mpf wraps the raw endpoint without rounding it to mp.prec
def lo(x: iv.mpf) -> mpf:
    return mp.make_mpf(x._mpi_[0])


def hi(x: iv.mpf) -> mpf:
    return mp.make_mpf(x._mpi_[1])


def mid(x: iv.mpf) -> mpf:
    with mp.workprec(iv.prec + 20):
        return (lo(x) + hi(x)) / 2


def radius(x: iv.mpf) -> mpf:
    with mp.workprec(iv.prec + 20):
        return (hi(x) - lo(x)) / 2


def certainly_positive(x: iv.mpf) -> bool:
    return lo(x) > 0


def certainly_less(x: iv.mpf, y) -> bool:
    """True when every point of ``x`` is below every point of ``y``."""
    y = y if isinstance(y, iv.mpf) else to_iv(y)
    return hi(x) < lo(y)


def iv_abs(x: iv.mpf) -> iv.mpf:
    if lo(x) >= 0:
        return x
    if hi(x) <= 0:
        return -x
    return iv.mpf([0, max(-lo(x), hi(x))])


def iv_max(values) -> iv.mpf:
    values = list(values)
    return iv.mpf([max(lo(v) for v in values), max(hi(v) for v in values)])


def iv_min(values) -> iv.mpf:
    values = list(values)
    return iv.mpf([min(lo(v) for v in values), min(hi(v) for v in values)])


def ball_json(x: iv.mpf, digits: int = 30) -> dict[str, str]:
    with mp.workprec(iv.prec + 20):
        return {"mid": mp.nstr(mid(x), digits), "radius": mp.nstr(radius(x), 3)}
