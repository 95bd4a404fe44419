"""Classification of pairs ``(nu, x0)``: bounded-depth membership in Omega,
increase/decrease labels, thinness, the ``u_n``/``f_n`` scans and the
enumerations of Omega^1 (= Sigma), Sigma1 and Sigma2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from mpmath import iv

from .exact import is_square_int, isqrt, square_free_part, sturm_count
from .numeric import lo as iv_lo, precision
from .quartic import GaloisType, step2_galois_type
from .tower import Pair, Tower

DEFAULT_DEPTH = 6
# Sturm counts above this level are replaced by an interval certificate
STURM_MAX_LEVEL = 8


class Status(str, enum.Enum):
    NOT_IN_OMEGA = "NotInOmegaAtDepth"
    INC = "IncVerified"
    DEC = "DecVerified"


class Reason(str, enum.Enum):
    DEGREE_COLLAPSE = "DegreeCollapse"
    NOT_TOTALLY_REAL = "NotTotallyReal"
    OUTSIDE_REGIONS = "OutsideInequalityRegions"


@dataclass(frozen=True)
class OmegaClass:
    status: Status
    depth: int
    reason: Optional[Reason] = None

    @property
    def in_omega(self) -> bool:
        return self.status is not Status.NOT_IN_OMEGA

    def __str__(self) -> str:
        if self.reason is None:
            return f"{self.status.value}({self.depth})"
        return f"{self.status.value}({self.depth}, {self.reason.value})"


def _totally_real_by_houses(pair: Pair, n: int) -> bool:
    # conjugates of x_{k-1} are symmetric, so nu + x_{k-1} > 0 everywhere
    # iff the house of x_{k-1} stays below nu
    with precision(60):
        h = iv.sqrt(iv.mpf(pair.nu + pair.x0))
        for _ in range(2, n + 1):
            if not iv_lo(pair.nu - h) > 0:
                return False
            h = iv.sqrt(pair.nu + h)
    return True


@lru_cache(maxsize=4096)
def _sturm_real(pair: Pair, n: int) -> bool:
    return sturm_count(Tower.for_pair(pair, n).min_poly(n)) == 2 ** n


def totally_real(pair: Pair, n: int) -> bool:
    """Whether ``K_n`` is totally real: Sturm count up to ``STURM_MAX_LEVEL``,
    the certified house recursion above it.  Verdicts are cached per pair."""
    if n > STURM_MAX_LEVEL:
        return _totally_real_by_houses(pair, n)
    return _sturm_real(pair, n)


def classify_pair(pair: Pair, depth: int = DEFAULT_DEPTH, tower: Optional[Tower] = None) -> OmegaClass:
    """Verify degree doubling and total reality to ``depth``, then label."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    tower = tower if tower is not None and tower.depth >= depth else Tower.for_pair(pair, depth)
    for n in range(1, depth + 1):
        if tower.radicand(n).sqrt() is not None:
            return OmegaClass(Status.NOT_IN_OMEGA, n, Reason.DEGREE_COLLAPSE)
    for n in range(1, depth + 1):
        if not totally_real(pair, n):
            return OmegaClass(Status.NOT_IN_OMEGA, n, Reason.NOT_TOTALLY_REAL)
    nu, x0 = pair.nu, pair.x0
    if nu > x0 * x0 - x0:
        return OmegaClass(Status.INC, depth)
    if nu < x0 * x0 - x0 and x0 < nu * nu - nu:
        return OmegaClass(Status.DEC, depth)
    return OmegaClass(Status.NOT_IN_OMEGA, depth, Reason.OUTSIDE_REGIONS)


class IncreaseReason(str, enum.Enum):
    MOD4 = "Mod4"
    ZERO_NON_SQUARE = "ZeroNonSquare"
    UNKNOWN = "Unknown"


def increase_sufficient(pair: Pair) -> IncreaseReason:
    """Known sufficient conditions for the tower to double at every step."""
    # both may hold, e.g. (3, 0); the more specific condition is reported
    if pair.x0 == 0 and not is_square_int(pair.nu):
        return IncreaseReason.ZERO_NON_SQUARE
    if (pair.nu + pair.x0) % 4 in (2, 3):
        return IncreaseReason.MOD4
    return IncreaseReason.UNKNOWN


@dataclass(frozen=True)
class ThinResult:
    thin: bool
    a: Optional[int] = None

    def __bool__(self) -> bool:
        return self.thin


def is_thin(pair: Pair) -> ThinResult:
    """Thin from level 0 iff ``u0 - x0`` is not a perfect square."""
    diff = pair.u0 - pair.x0
    if diff >= 0:
        r, exact = isqrt(diff)
        if exact:
            return ThinResult(False, r)
    return ThinResult(True)


def klein_witness_scan(ctx: Tower, max_n: int) -> list[tuple[int, GaloisType]]:
    """Galois types of ``K_{n+2}/K_n`` for ``n = 0..max_n``."""
    if ctx.depth < max_n + 2:
        raise ValueError(f"tower depth {ctx.depth} below max_n + 2 = {max_n + 2}")
    return [(n, step2_galois_type(ctx, n).galois) for n in range(max_n + 1)]


def u_values(nu: int, count: int) -> list[int]:
    vals = [nu * nu - nu]
    for _ in range(count - 1):
        vals.append(vals[-1] ** 2 - nu)
    return vals


def fn_scan(pair: Pair, max_n: int = 20) -> list[tuple[int, int, bool]]:
    """``f_n = (u_{n-1} - x0)(u_n - x0)`` and whether it is a square, ``n = 1..max_n``."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    u = u_values(pair.nu, max_n + 1)
    out = []
    for n in range(1, max_n + 1):
        f = (u[n - 1] - pair.x0) * (u[n] - pair.x0)
        out.append((n, f, is_square_int(f)))
    return out


@dataclass
class ECScan:
    bound: int
    points: list[int]
    u_hits: dict[int, int] = field(default_factory=dict)  # X = u_{n-1} -> n


def ec_point_scan(pair: Pair, bound: int = 10**6) -> ECScan:
    """Integers ``|X| <= bound`` with ``(X - x0)(X^2 - (nu + x0))`` a square.

    A naive bounded search, not a provably complete integral-point computation.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    c = pair.nu + pair.x0
    x0 = pair.x0
    # P(X) < 0 for X < -sqrt(c); skip that half-line
    start = max(-bound, -math.isqrt(c))
    pts = [X for X in range(start, bound + 1) if is_square_int((X - x0) * (X * X - c))]
    hits: dict[int, int] = {}
    u = pair.nu * pair.nu - pair.nu
    n = 1
    while u <= bound:
        if u in pts:
            hits[u] = n
        nxt = u * u - pair.nu
        if nxt == u:
            break
        u, n = nxt, n + 1
    return ECScan(bound, pts, hits)


@dataclass(frozen=True)
class Omega1Cert:
    a: int
    generators: tuple[int, int, int]  # 2(nu-a), 2(nu+a), nu+x0
    square_free: tuple[int, int, int]

    @property
    def distinct(self) -> bool:
        return len(set(self.square_free)) == 3


def omega1_cert(pair: Pair) -> Optional[Omega1Cert]:
    t = is_thin(pair)
    if t.thin or t.a == 0:
        return None
    a = t.a
    gens = (2 * (pair.nu - a), 2 * (pair.nu + a), pair.nu + pair.x0)
    return Omega1Cert(a, gens, tuple(square_free_part(g) for g in gens))


def enumerate_omega1(max_nu: int, depth: int = DEFAULT_DEPTH) -> list[tuple[Pair, Omega1Cert, OmegaClass]]:
    """Pairs ``(nu, u0 - a^2)`` with ``1 <= a <= nu - 1`` that pass ``classify_pair``."""
    if max_nu < 2:
        raise ValueError("max_nu must be >= 2")
    out = []
    for nu in range(2, max_nu + 1):
        for a in range(1, nu):
            pair = Pair(nu, nu * nu - nu - a * a)
            cls = classify_pair(pair, depth)
            if cls.in_omega:
                cert = omega1_cert(pair)
                assert cert is not None and cert.a == a
                out.append((pair, cert, cls))
    out.sort(key=lambda r: (r[0].nu, r[0].x0))
    return out


@dataclass
class SigmaEnumeration:
    sigma1: list[tuple[Pair, int]]  # (pair, k)
    sigma2: list[tuple[Pair, int]]
    rejected: list[tuple[str, Pair, int, OmegaClass]]


def enumerate_sigma12(max_nu: int, depth: int = DEFAULT_DEPTH) -> SigmaEnumeration:
    """Sigma1: ``a = nu - k^2``, ``1 <= k <= sqrt(nu-1)``; Sigma2: ``a = k^2 - nu``,
    ``sqrt(nu+1) <= k <= sqrt(2nu-1)``; each filtered through ``classify_pair``."""
    if max_nu < 2:
        raise ValueError("max_nu must be >= 2")
    res = SigmaEnumeration([], [], [])
    for nu in range(2, max_nu + 1):
        u0 = nu * nu - nu
        cands = [("sigma1", k, nu - k * k) for k in range(1, isqrt(nu - 1)[0] + 1)]
        if nu >= 3:
            k_lo = isqrt(nu + 1)[0]
            if k_lo * k_lo < nu + 1:
                k_lo += 1
            cands += [("sigma2", k, k * k - nu) for k in range(k_lo, isqrt(2 * nu - 1)[0] + 1)]
        for name, k, a in cands:
            pair = Pair(nu, u0 - a * a)
            cls = classify_pair(pair, depth)
            if cls.in_omega:
                getattr(res, name).append((pair, k))
            else:
                res.rejected.append((name, pair, k, cls))
    return res
