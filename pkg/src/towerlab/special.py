"""Membership criteria: sqrt(2), the set X for ``x^(2,0)_2``, the Fermat-form
classifier for ``zeta_m + 1/zeta_m`` and minimal polynomials of ``2cos(2pi/m)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exact import UPoly, factorize, is_square_int, isqrt, square_free_part
from .omega import classify_pair, is_thin
from .tower import Pair, Tower

FERMAT_PRIMES = (3, 5, 17, 257, 65537)


class MembershipError(ValueError):
    pass


def _require_omega(pair: Pair, depth: int) -> None:
    cls = classify_pair(pair, depth)
    if not cls.in_omega:
        raise MembershipError(f"{pair} not verified in Omega at depth {depth}: {cls}")


def sigma_k(pair: Pair) -> Optional[tuple[str, int]]:
    """``("sigma1", k)`` / ``("sigma2", k)`` when ``u0 - x0 = (nu - k^2)^2`` fits a range."""
    t = is_thin(pair)
    if t.thin or not 1 <= t.a <= pair.nu - 1:
        return None
    nu, a = pair.nu, t.a
    r, exact = isqrt(nu - a)
    if exact and 1 <= r and r * r <= nu - 1:
        return ("sigma1", r)
    r, exact = isqrt(nu + a)
    if exact and nu >= 3 and nu + 1 <= r * r <= 2 * nu - 1:
        return ("sigma2", r)
    return None


@dataclass(frozen=True)
class Sqrt2Result:
    value: bool
    clause: Optional[str]  # "sfp=2", "sigma1", "sigma2" or None
    k: Optional[int]
    direct: bool  # sqrt(2) found by the level-2 square test

    @property
    def consistent(self) -> bool:
        return self.value == self.direct


def sqrt2_in_K(pair: Pair, depth: int = 2) -> Sqrt2Result:
    """Decide ``sqrt(2) in K`` by the criterion, cross-checked by a square test in ``K_2``."""
    _require_omega(pair, max(depth, 2))
    direct = Tower.for_pair(pair, 2).const(2, 2).sqrt() is not None
    if square_free_part(pair.nu + pair.x0) == 2:
        return Sqrt2Result(True, "sfp=2", None, direct)
    sk = sigma_k(pair)
    if sk is not None:
        return Sqrt2Result(True, sk[0], sk[1], direct)
    return Sqrt2Result(False, None, None, direct)


@dataclass(frozen=True)
class XParam:
    b: int
    d: int

    @property
    def nu(self) -> int:
        return 2 * (self.b ** 2 + 6 * self.b * self.d + 10 * self.d ** 2)

    @property
    def kappa_signed(self) -> int:
        return self.b ** 2 + 8 * self.b * self.d + 14 * self.d ** 2

    @property
    def kappa(self) -> int:
        return abs(self.kappa_signed)

    @property
    def x0(self) -> int:
        return 2 * self.kappa_signed ** 2 - self.nu

    @property
    def pair(self) -> Pair:
        return Pair(self.nu, self.x0)


def verify_x_identity(param: XParam) -> bool:
    """Check ``(b*y + d*y^3)^2 = nu + kappa_signed*sqrt(2)`` in the (2,0) tower,
    with ``y = x^(2,0)_2``, and ``(kappa_signed*sqrt(2))^2 = nu + x0``.

    Together these say ``b*y + d*y^3`` is a value of ``x_2`` for ``(nu, x0)``.
    """
    t = Tower.for_pair(Pair(2, 0), 2)
    y = t.gen(2)
    w = param.b * y + param.d * y ** 3
    x1_image = param.kappa_signed * t.gen(1, 2)
    return w * w == param.nu + x1_image and x1_image * x1_image == param.nu + param.x0


class XStatus(str, enum.Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    HYPOTHESIS = "hypothesis_violation"


@dataclass(frozen=True)
class XResult:
    status: XStatus
    witness: Optional[tuple[int, int]] = None
    identity_ok: Optional[bool] = None
    detail: str = ""


def x2_20_in_K(pair: Pair, bound: Optional[int] = None) -> XResult:
    """Search ``(b, d)`` placing ``(nu, x0)`` in the set X.

    ``nu/2 = (b + 3d)^2 + d^2`` bounds ``|d|``; for each ``d`` the value of ``b``
    is solved exactly, so the search is complete for ``|d| <= bound``.
    """
    s = square_free_part(pair.nu + pair.x0)
    if s != 2:
        return XResult(XStatus.HYPOTHESIS, detail=f"square-free part of nu + x0 is {s}, not 2")
    if pair.nu % 2:
        return XResult(XStatus.NOT_FOUND, detail="nu is odd")
    half = pair.nu // 2
    if bound is None:
        bound = isqrt(half)[0] + 1
    found = []
    for d in range(-bound, bound + 1):
        rest = half - d * d
        if rest < 0:
            continue
        r, exact = isqrt(rest)
        if not exact:
            continue
        for b in sorted({r - 3 * d, -r - 3 * d}):
            p = XParam(b, d)
            if p.nu == pair.nu and p.x0 == pair.x0:
                found.append((b, d))
    if not found:
        return XResult(XStatus.NOT_FOUND, detail=f"no (b, d) with |d| <= {bound}")
    # prefer the smallest witness
    b, d = min(found, key=lambda w: (abs(w[0]) + abs(w[1]), -w[0], -w[1]))
    return XResult(XStatus.FOUND, (b, d), verify_x_identity(XParam(b, d)))


class FermatForm(str, enum.Enum):
    FORM_2R_P1_P2 = "Form2rP1P2"
    FORM_2R_P1 = "Form2rP1"
    FORM_2R = "Form2r"
    NOT_ADMISSIBLE = "NotAdmissible"


def fermat_m_classifier(m: int) -> FermatForm:
    """Match ``m`` against ``2^r p1 p2`` (r <= 2), ``2^r p1`` (r >= 3), ``2^r`` (r >= 2),
    with p1, p2 distinct Fermat primes, exactly as stated."""
    if m < 3:
        raise ValueError("m must be >= 3")
    f = factorize(m)
    r = f.pop(2, 0)
    if any(p not in FERMAT_PRIMES or e > 1 for p, e in f.items()):
        return FermatForm.NOT_ADMISSIBLE
    k = len(f)
    if k == 2 and r <= 2:
        return FermatForm.FORM_2R_P1_P2
    if k == 1 and r >= 3:
        return FermatForm.FORM_2R_P1
    if k == 0 and r >= 2:
        return FermatForm.FORM_2R
    return FermatForm.NOT_ADMISSIBLE


def euler_phi(m: int) -> int:
    out = m
    for p in factorize(m):
        out = out // p * (p - 1)
    return out


def _divisors(m: int) -> list[int]:
    small = [d for d in range(1, isqrt(m)[0] + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple[int, ...]:
    """Integer coefficients of ``Phi_m``, lowest degree first."""
    num = UPoly([-1] + [0] * (m - 1) + [1])
    for d in _divisors(m)[:-1]:
        num = num // UPoly(cyclotomic(d))
    return tuple(int(c) for c in num.coeffs)


def min_poly_2cos(m: int) -> UPoly:
    """Minimal polynomial of ``2cos(2pi/m)`` from ``Phi_m(X) = X^k Psi(X + 1/X)``."""
    if m < 3:
        raise ValueError("m must be >= 3")
    phi = list(cyclotomic(m))
    k = (len(phi) - 1) // 2
    # Laurent coefficients of X^-k Phi_m(X), indexed by exponent + k
    lau = phi[:]
    psi = [0] * (k + 1)
    for j in range(k, -1, -1):
        c = lau[j + k]
        psi[j] = c
        if c:
            # subtract c * (X + 1/X)^j
            for i in range(j + 1):
                lau[(j - 2 * i) + k] -= c * math.comb(j, i)
    assert not any(lau), "cyclotomic polynomial is not palindromic"
    return UPoly(psi)


@dataclass
class CycloCheck:
    n: int
    m: int
    which: str
    equal: bool


@dataclass
class CycloReport:
    checks: list[CycloCheck]

    @property
    def passed(self) -> bool:
        return all(c.equal for c in self.checks)


def verify_cyclotomic_towers(max_n: int) -> CycloReport:
    """``min_poly_2cos(2^(n+2)) = P^(2,0)_n`` and ``min_poly_2cos(3*2^(n+2)) = P^(2,1)_(n+1)``."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    t20 = Tower.for_pair(Pair(2, 0), max_n)
    t21 = Tower.for_pair(Pair(2, 1), max_n + 1)
    checks = []
    for n in range(0, max_n + 1):
        m = 2 ** (n + 2)
        checks.append(CycloCheck(n, m, f"P^(2,0)_{n}", min_poly_2cos(m) == t20.min_poly(n)))
        checks.append(CycloCheck(n, 3 * m, f"P^(2,1)_{n + 1}", min_poly_2cos(3 * m) == t21.min_poly(n + 1)))
    return CycloReport(checks)


@dataclass
class FermatReport:
    rows: list[tuple[int, FermatForm]]
    discrepancies: list[dict] = field(default_factory=list)


def fermat_report(ms) -> FermatReport:
    """Classify each ``m``, then flag the known m = 12 discrepancy.

    ``2cos(pi/6) = sqrt(3)`` generates ``K^(2,1)_1``, yet 12 = 2^2 * 3 matches
    none of the three forms.
    """
    rows = [(m, fermat_m_classifier(m)) for m in ms]
    in_k21 = min_poly_2cos(12) == Tower.for_pair(Pair(2, 1), 1).min_poly(1)
    disc = []
    if in_k21 and fermat_m_classifier(12) is FermatForm.NOT_ADMISSIBLE:
        disc.append({
            "m": 12,
            "classified": FermatForm.NOT_ADMISSIBLE.value,
            "observed": "2cos(2pi/12) = sqrt(3) generates K^(2,1)_1",
        })
    return FermatReport(rows, disc)


def is_square_rat(q: Fraction) -> bool:
    return q >= 0 and is_square_int(q.numerator) and is_square_int(q.denominator)
