"""Exact rational and univariate polynomial arithmetic.

Rationals are :class:`fractions.Fraction` (always normalized, ``0`` is ``0/1``).
Polynomials are :class:`UPoly`, immutable tuples of Fractions stored lowest
degree first.  Sturm counting runs on a primitive integer remainder sequence so
coefficient growth stays manageable up to degree ~64.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence, Union

Rat = Fraction
Number = Union[int, Fraction]

# quadratic residues used to reject most non-squares before calling isqrt
_QR64 = frozenset(i * i % 64 for i in range(64))
_QR63 = frozenset(i * i % 63 for i in range(63))
_QR65 = frozenset(i * i % 65 for i in range(65))
_QR11 = frozenset(i * i % 11 for i in range(11))


def isqrt(n: int) -> tuple[int, bool]:
    """Floor square root and whether ``n`` is a perfect square."""
    if n < 0:
        raise ValueError(f"isqrt of negative integer {n}")
    r = math.isqrt(n)
    return r, r * r == n


def is_square_int(n: int) -> bool:
    if n < 0:
        return False
    if n < 4:
        return n in (0, 1)
    if (n % 64 not in _QR64 or n % 63 not in _QR63
            or n % 65 not in _QR65 or n % 11 not in _QR11):
        return False
    return isqrt(n)[1]


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        c = rng.randrange(1, n)
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int, trial_bound: int = 10**6) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division, then Pollard rho."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p <= trial_bound and p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n == 1:
        return out
    rng = random.Random(0)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def square_free_part(n: int, trial_bound: int = 10**6) -> int:
    """The square-free ``s`` with ``n = s*m**2`` and ``sign(s) == sign(n)``."""
    if n == 0:
        raise ValueError("square-free part of 0 is undefined")
    s = 1
    for p, e in factorize(n, trial_bound).items():
        if e % 2:
            s *= p
    return s if n > 0 else -s


def rat_is_square(q: Number) -> Optional[Fraction]:
    """Nonnegative rational square root of ``q`` if it exists."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, en = isqrt(q.numerator)
    if not en:
        return None
    rd, ed = isqrt(q.denominator)
    if not ed:
        return None
    return Fraction(rn, rd)


def _trim(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UPoly:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs: tuple[Fraction, ...] = _trim(Fraction(c) for c in coeffs)

    @classmethod
    def x(cls) -> UPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> UPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mon = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mon and a == 1:
                body = mon
            elif mon:
                body = f"{a}*{mon}"
            else:
                body = str(a)
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def __add__(self, other: UPoly | Number) -> UPoly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> UPoly:
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other: UPoly | Number) -> UPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Number) -> UPoly:
        return _as_poly(other) - self

    def __mul__(self, other: UPoly | Number) -> UPoly:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UPoly:
        result = UPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: UPoly) -> tuple[UPoly, UPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return UPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lc
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UPoly(quot), UPoly(rem[:dq])

    def __floordiv__(self, other: UPoly) -> UPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UPoly) -> UPoly:
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UPoly:
        return UPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> UPoly:
        if self.is_zero():
            return self
        lc = self.lc
        return UPoly(c / lc for c in self.coeffs)

    def compose(self, inner: UPoly) -> UPoly:
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def integer_primitive(self) -> list[int]:
        """Integer coefficients of the primitive associate with positive lc."""
        if self.is_zero():
            return []
        den = reduce(lambda a, b: a * b // math.gcd(a, b),
                     (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints)
        if ints[-1] < 0:
            g = -g
        return [c // g for c in ints]


def _as_poly(p: UPoly | Number) -> UPoly:
    return p if isinstance(p, UPoly) else UPoly.const(p)


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free(p: UPoly) -> UPoly:
    """``p / gcd(p, p')``, made monic."""
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    if p.degree < 1:
        return UPoly.const(1)
    return (p // poly_gcd(p, p.derivative())).monic()


def poly_step(p: UPoly, nu: int) -> UPoly:
    """The composition ``p(X**2 - nu)``."""
    return p.compose(UPoly((-nu, 0, 1)))


# --- Sturm sequences over Z -------------------------------------------------

def _iprem_neg(f: list[int], g: list[int]) -> list[int]:
    """Positive multiple of ``-rem(f, g)``, made primitive."""
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    steps = 0
    while len(r) - 1 >= dg and any(r):
        steps += 1
        c = r[-1]
        shift = len(r) - 1 - dg
        r = [lc * x for x in r]
        for j, b in enumerate(g):
            r[shift + j] -= c * b
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    # r = lc**steps * rem(f, g)
    if lc < 0 and steps % 2 == 1:
        r = [-x for x in r]
    r = [-x for x in r]
    if not r:
        return r
    g2 = reduce(math.gcd, r)
    return [x // abs(g2) for x in r]


def sturm_chain(p: UPoly) -> list[list[int]]:
    """Sturm chain of the square-free part of ``p``, as primitive integer lists."""
    sf = square_free(p)
    s0 = sf.integer_primitive()
    chain = [s0]
    if len(s0) < 2:
        return chain
    s1 = sf.derivative().integer_primitive()
    chain.append(s1)
    while len(chain[-1]) > 1:
        nxt = _iprem_neg(chain[-2], chain[-1])
        if not nxt:
            break
        chain.append(nxt)
    return chain


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _eval_sign(coeffs: list[int], x: Optional[Fraction], at_inf: int) -> int:
    if x is None:
        deg = len(coeffs) - 1
        s = _sign(coeffs[-1])
        return s if (at_inf > 0 or deg % 2 == 0) else -s
    # homogeneous evaluation keeps the arithmetic integral
    num, den = x.numerator, x.denominator
    acc = 0
    pw = 1
    for c in reversed(coeffs):
        acc = acc * num + c * pw
        pw *= den
    return _sign(acc)


def _variations(chain: list[list[int]], x: Optional[Fraction], at_inf: int = 0) -> int:
    signs = [s for s in (_eval_sign(c, x, at_inf) for c in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


Endpoint = Union[None, int, Fraction, float]


def _endpoint(e, default_inf: int) -> tuple[Optional[Fraction], int]:
    if e is None:
        return None, default_inf
    if isinstance(e, float) and math.isinf(e):
        return None, (1 if e > 0 else -1)
    return Fraction(e), 0


def sturm_count(p: UPoly, lo: Endpoint = None, hi: Endpoint = None,
                chain: Optional[list[list[int]]] = None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``None`` or ``±math.inf`` stand for the infinite endpoints.
    """
    if p.is_zero():
        raise ValueError("sturm_count of the zero polynomial")
    lo_x, lo_inf = _endpoint(lo, -1)
    hi_x, hi_inf = _endpoint(hi, 1)
    if lo_x is not None and hi_x is not None and lo_x >= hi_x:
        raise ValueError("empty interval")
    if chain is None:
        chain = sturm_chain(p)
    return _variations(chain, lo_x, lo_inf) - _variations(chain, hi_x, hi_inf)


def root_bound(p: UPoly) -> Fraction:
    """Cauchy bound: every root has absolute value below it."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: UPoly, width: Fraction = Fraction(1, 10**30)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` each holding one real root, refined below ``width``."""
    chain = sturm_chain(p)
    sf = chain[0]
    b = root_bound(p)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        k = sturm_count(p, lo, hi, chain)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    refined = []
    for lo, hi in out:
        # one simple root in (lo, hi]: bisect on sign of the square-free part
        if _eval_sign(sf, hi, 0) == 0:
            refined.append((hi, hi))
            continue
        s_hi = _eval_sign(sf, hi, 0)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s_mid = _eval_sign(sf, mid, 0)
            if s_mid == 0:
                lo = hi = mid
                break
            if s_mid == s_hi:
                hi = mid
            else:
                lo = mid
        refined.append((lo, hi))
    return sorted(refined)
