"""Exact modular and p-adic arithmetic over odd prime-power moduli.

Everything here is a pure function of its arguments on Python integers,
so intermediates never overflow; `PrimePowerModulus` caps q below 2^62
to keep the same guarantee for the int64 kernels downstream.  Unit
circle evaluation reduces its argument in integers before any floating
conversion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import (
    EvenModulus,
    NonResidue,
    NotInvertible,
    ValidationError,
    ZeroInput,
)

_MAX_P = 1 << 20
_MAX_Q = 1 << 62


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _is_prime(p: int) -> bool:
    return p == 2 or is_odd_prime(p)


@dataclass(frozen=True)
class PrimePowerModulus:
    """An odd prime power q = p^n with 3 <= p < 2^20 and q < 2^62."""

    p: int
    n: int
    q: int = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.n, int):
            raise ValidationError("p and n must be integers")
        if self.p >= _MAX_P or not is_odd_prime(self.p):
            raise ValidationError(f"p must be an odd prime below 2^20, got {self.p}")
        if self.n < 1:
            raise ValidationError(f"exponent must be >= 1, got {self.n}")
        q = self.p ** self.n
        if q >= _MAX_Q:
            raise ValidationError(f"p^n = {q} exceeds the 2^62 modulus cap")
        object.__setattr__(self, "q", q)

    @property
    def phi(self) -> int:
        """Euler totient p^(n-1) * (p-1)."""
        return self.q // self.p * (self.p - 1)

    def __str__(self) -> str:
        return f"{self.p}^{self.n}" if self.n > 1 else str(self.p)


@dataclass(frozen=True)
class RootPair:
    """The two square roots of a unit square mod p^n.

    r1 is canonical: its base-p residue lies in [1, (p-1)/2].  The pair
    always satisfies r2 = q - r1, so r1 + r2 = 0 mod q.
    """

    r1: int
    r2: int
    modulus: PrimePowerModulus

    def __iter__(self):
        return iter((self.r1, self.r2))


@dataclass(frozen=True)
class EpsilonFactor:
    """Unit attached to q: 1 when q = 1 (mod 4), i when q = 3 (mod 4)."""

    is_real: bool

    @property
    def value(self) -> complex:
        return (1 + 0j) if self.is_real else 1j


@dataclass(frozen=True)
class PAdicValuation:
    """Exponent of p in x; v is math.inf exactly when x = 0."""

    v: int | float
    p: int

    @property
    def is_infinite(self) -> bool:
        return self.v == math.inf

    @property
    def absolute_value(self) -> float:
        """|x|_p = p^-v, with |0|_p = 0."""
        if self.is_infinite:
            return 0.0
        return float(self.p) ** (-self.v)


def mod_inverse(x: int, m: int) -> int:
    """Inverse of x mod m, as a residue in [1, m)."""
    if m < 2:
        raise ValidationError(f"modulus must be >= 2, got {m}")
    if math.gcd(x, m) != 1:
        raise NotInvertible(f"gcd({x}, {m}) > 1")
    return pow(x, -1, m)


def jacobi_symbol(x: int, m: int) -> int:
    """Jacobi symbol (x/m) for odd m >= 1."""
    if m < 1 or m % 2 == 0:
        raise EvenModulus(f"Jacobi symbol needs an odd positive modulus, got {m}")
    x %= m
    result = 1
    while x != 0:
        while x % 2 == 0:
            x //= 2
            if m % 8 in (3, 5):
                result = -result
        x, m = m, x
        if x % 4 == 3 and m % 4 == 3:
            result = -result
        x %= m
    return result if m == 1 else 0


def sqrt_mod_prime(r: int, p: int) -> RootPair:
    """Both solutions of y^2 = r (mod p) via Tonelli-Shanks.

    The p = 3 (mod 4) case short-circuits to a single power; the general
    case runs the standard 2-Sylow descent.
    """
    if not is_odd_prime(p):
        raise ValidationError(f"{p} is not an odd prime")
    r %= p
    if r == 0:
        raise ZeroInput(f"p = {p} divides the argument")
    if jacobi_symbol(r, p) != 1:
        raise NonResidue(f"{r} is not a square mod {p}")
    if p % 4 == 3:
        y = pow(r, (p + 1) // 4, p)
    else:
        d, s = p - 1, 0
        while d % 2 == 0:
            d //= 2
            s += 1
        z = 2
        while jacobi_symbol(z, p) != -1:
            z += 1
        c = pow(z, d, p)
        y = pow(r, (d + 1) // 2, p)
        t = pow(r, d, p)
        m = s
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            y = y * b % p
            c = b * b % p
            t = t * c % p
            m = i
    r1 = min(y, p - y)
    return RootPair(r1, p - r1, PrimePowerModulus(p, 1))


def sqrt_mod_prime_power(r: int, modulus: PrimePowerModulus) -> RootPair:
    """Both solutions of y^2 = r (mod p^n), by quadratic Hensel lifting.

    The base root comes from `sqrt_mod_prime`; each Newton step doubles
    the precision.  The result is verified by squaring before return.
    """
    p, n, q = modulus.p, modulus.n, modulus.q
    r %= q
    if r % p == 0:
        raise ZeroInput(f"p = {p} divides the argument")
    x = sqrt_mod_prime(r % p, p).r1
    k = 1
    while k < n:
        k = min(2 * k, n)
        pk = p ** k
        x = (x - (x * x - r) * pow(2 * x % pk, -1, pk)) % pk
    if x % p > (p - 1) // 2:
        x = q - x
    if (x * x - r) % q != 0:
        raise ArithmeticError(f"lift verification failed for r={r} mod {q}")
    return RootPair(x, q - x, modulus)


def p_adic_valuation(x: int, p: int) -> PAdicValuation:
    """v_p(x), with v_p(0) = +inf by convention."""
    if not _is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if x == 0:
        return PAdicValuation(math.inf, p)
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return PAdicValuation(v, p)


def epsilon_factor(modulus: PrimePowerModulus) -> EpsilonFactor:
    return EpsilonFactor(is_real=(modulus.q % 4 == 1))


def unit_circle(x: int, w: int) -> complex:
    """e(x/w) = exp(2*pi*i*x/w), with x reduced mod w in integers first."""
    if w < 1:
        raise ValidationError(f"modulus must be >= 1, got {w}")
    t = x % w
    return cmath.exp(2j * math.pi * t / w)
