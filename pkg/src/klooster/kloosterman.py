"""Kloosterman sums Kl(a, b; p^n): brute force, closed form, fast rows.

Three independent evaluation routes, kept deliberately separate so each
can serve as an oracle for the others:

* ``kl_brute``     - direct summation over the units (the definition);
* ``kl_closed``    - the two-critical-point closed form, valid for n >= 2,
                     which returns algebraically exact zeros with a tagged
                     reason instead of floating nearly-zeros;
* ``kl_row_dft``   - the whole row b -> Kl(a, b; q) at once, as the length-q
                     inverse DFT of x -> e_q(a * inv(x)) on the units.

For a unit a, Kl(a, b; q) = Kl(1, ab; q) (substitute x -> a*x, a bijection
of the units); the row helpers exploit this and the equality is itself
covered by tests against the definition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import ModulusTooLarge, NonResidue, RequiresNAtLeastTwo, ValidationError
from .residue import PrimePowerModulus, epsilon_factor, jacobi_symbol, sqrt_mod_prime_power

_BRUTE_MAX_Q = 1 << 26
_ROW_MAX_Q = 1 << 24


class EvalMethod(Enum):
    BRUTE = "brute"
    CLOSED_FORM = "closed"
    DFT_ROW = "dft"


class ZeroReason(Enum):
    NONE = "none"
    NON_RESIDUE_AB = "nonresidueab"
    P_DIVIDES_B = "pdividesb"


@dataclass(frozen=True)
class KloostermanQuery:
    a: int
    b: int
    modulus: PrimePowerModulus

    def __post_init__(self):
        if math.gcd(self.a, self.modulus.q) != 1:
            raise ValidationError(f"a = {self.a} is not a unit mod {self.modulus.q}")


@dataclass(frozen=True)
class KloostermanValue:
    value: float
    method: EvalMethod
    zero_reason: ZeroReason = ZeroReason.NONE


@lru_cache(maxsize=64)
def _unit_tables(p: int, n: int):
    """(units, aligned inverses) for q = p^n; cached ndarray pair."""
    q = p ** n
    inv = _kernels.inverse_table(q, p)
    units = np.nonzero(inv)[0].astype(np.int64)
    return units, inv[units]


@lru_cache(maxsize=32)
def _circle_tables(q: int):
    return _kernels.circle_tables(q)


@lru_cache(maxsize=32)
def _exp_row_cached(first_arg: int, p: int, n: int):
    """Row c -> sum over units x of e_q(first_arg * inv(x) + c * x).

    ``first_arg`` need not be a unit; with first_arg = 1 this is the
    Kloosterman row Kl(1, c; q).  Returns (row, max imaginary part).
    """
    q = p ** n
    units, invs = _unit_tables(p, n)
    cos_t, sin_t = _circle_tables(q)
    scaled = (first_arg % q) * invs % q
    row, max_im = _kernels.exp_sum_row(q, units, scaled, cos_t, sin_t)
    row.setflags(write=False)
    return row, max_im


def brute_row(modulus: PrimePowerModulus) -> np.ndarray:
    """Kl(1, c; q) for every residue c, by direct summation."""
    if modulus.q > _ROW_MAX_Q:
        raise ModulusTooLarge(f"q = {modulus.q} exceeds the 2^24 row guard")
    return _exp_row_cached(1, modulus.p, modulus.n)[0]


def brute_row_with_im(modulus: PrimePowerModulus) -> tuple[np.ndarray, float]:
    """Brute row plus the largest |imaginary part| seen across its entries."""
    if modulus.q > _ROW_MAX_Q:
        raise ModulusTooLarge(f"q = {modulus.q} exceeds the 2^24 row guard")
    return _exp_row_cached(1, modulus.p, modulus.n)


def exp_sum_row(first_arg: int, modulus: PrimePowerModulus) -> np.ndarray:
    """Row of generalized sums over units; first argument may be any residue."""
    if modulus.q > _ROW_MAX_Q:
        raise ModulusTooLarge(f"q = {modulus.q} exceeds the 2^24 row guard")
    return _exp_row_cached(first_arg % modulus.q, modulus.p, modulus.n)[0]


@lru_cache(maxsize=32)
def _closed_row_cached(p: int, n: int):
    q = p ** n
    leg = _kernels.legendre_table(p)
    roots = _kernels.sqrt_table(q, p)
    c = np.arange(q, dtype=np.int64)
    row = np.zeros(q, dtype=np.float64)
    square = leg[c % p] == 1
    ell = roots[c[square]]
    scale = 2.0 * p ** (n / 2.0)
    jac = leg[ell % p].astype(np.float64) if n % 2 else 1.0
    ang = (2.0 * np.pi / q) * ((2 * ell) % q)
    if q % 4 == 1:
        vals = scale * jac * np.cos(ang)
    else:
        vals = -scale * jac * np.sin(ang)
    row[square] = vals
    row.setflags(write=False)
    return row


def closed_row(modulus: PrimePowerModulus) -> np.ndarray:
    """Closed-form Kl(1, c; q) for every residue c; requires n >= 2."""
    if modulus.n < 2:
        raise RequiresNAtLeastTwo("closed form needs n >= 2")
    if modulus.q > _ROW_MAX_Q:
        raise ModulusTooLarge(f"q = {modulus.q} exceeds the 2^24 row guard")
    return _closed_row_cached(modulus.p, modulus.n)


def vanishing_class(a: int, b: int, modulus: PrimePowerModulus) -> ZeroReason:
    """Algebraic classification of (a, b): which vanishing law applies.

    Only meaningful for n >= 2 (a prime modulus has no vanishing laws);
    independent of how the value is computed.
    """
    if modulus.n < 2:
        return ZeroReason.NONE
    b %= modulus.q
    if b % modulus.p == 0:
        return ZeroReason.P_DIVIDES_B
    if jacobi_symbol(a * b, modulus.p) == -1:
        return ZeroReason.NON_RESIDUE_AB
    return ZeroReason.NONE


def _brute_im_tolerance(modulus: PrimePowerModulus) -> float:
    return 1e-9 * modulus.phi * 2.0 ** -40 * modulus.q + 1e-6


def kl_brute(query: KloostermanQuery) -> KloostermanValue:
    """Kl(a, b; q) by compensated summation over the units in ascending x."""
    mod = query.modulus
    if mod.q > _BRUTE_MAX_Q:
        raise ModulusTooLarge(f"q = {mod.q} exceeds the 2^26 brute-force guard")
    re, im = _kernels.kl_point_brute(query.a % mod.q, query.b % mod.q, mod.q, mod.p)
    tol = _brute_im_tolerance(mod)
    assert abs(im) <= tol, f"imaginary part {im} exceeds tolerance {tol}"
    return KloostermanValue(value=re, method=EvalMethod.BRUTE)


def kl_closed(query: KloostermanQuery) -> KloostermanValue:
    """Closed form for n >= 2: zero unless ab is a unit square mod p, else
    2 * (l/q) * p^(n/2) * Re(eps * e_q(2l)) where l^2 = ab (mod q)."""
    mod = query.modulus
    if mod.n < 2:
        raise RequiresNAtLeastTwo("closed form needs n >= 2")
    p, q, n = mod.p, mod.q, mod.n
    b = query.b % q
    if b % p == 0:
        return KloostermanValue(0.0, EvalMethod.CLOSED_FORM, ZeroReason.P_DIVIDES_B)
    ab = query.a * b % q
    if jacobi_symbol(ab, p) == -1:
        return KloostermanValue(0.0, EvalMethod.CLOSED_FORM, ZeroReason.NON_RESIDUE_AB)
    ell = sqrt_mod_prime_power(ab, mod).r1
    eps = epsilon_factor(mod).value
    val = _closed_point(ell, p, n, q, eps)
    alt = _closed_point(q - ell, p, n, q, eps)
    assert abs(val - alt) <= 1e-9 * p ** (n / 2.0), "closed form depends on root choice"
    return KloostermanValue(val, EvalMethod.CLOSED_FORM)


def _closed_point(ell: int, p: int, n: int, q: int, eps: complex) -> float:
    scale = 2.0 * jacobi_symbol(ell, q) * p ** (n / 2.0)
    phase = (2 * ell) % q
    ang = 2.0 * math.pi * phase / q
    return scale * (eps * complex(math.cos(ang), math.sin(ang))).real


def kl_row_dft(a: int, modulus: PrimePowerModulus) -> np.ndarray:
    """All q values Kl(a, b; q), b = 0..q-1, in O(q log q).

    The row is the inverse DFT (scaled by q) of the unit-supported vector
    x -> e_q(a * inv(x)).  q = p^n is odd, so the transform runs through
    the FFT's arbitrary-length (Bluestein) path.
    """
    mod = modulus
    if math.gcd(a, mod.q) != 1:
        raise ValidationError(f"a = {a} is not a unit mod {mod.q}")
    if mod.q > _ROW_MAX_Q:
        raise ModulusTooLarge(f"q = {mod.q} exceeds the 2^24 row guard")
    q = mod.q
    units, invs = _unit_tables(mod.p, mod.n)
    phases = (a % q) * invs % q
    f = np.zeros(q, dtype=np.complex128)
    ang = (2.0 * np.pi / q) * phases
    f[units] = np.cos(ang) + 1j * np.sin(ang)
    row = np.fft.ifft(f) * q
    return np.real(row)


def weil_ratio(modulus: PrimePowerModulus, a_range=None, b_range=None) -> float:
    """max |Kl(a, b; q)| / sqrt(q) over the given ranges (defaults: all
    units a, all b).  Bounded by 2 for every odd prime power."""
    mod = modulus
    q = mod.q
    sqrt_q = math.sqrt(q)
    full = a_range is None and b_range is None
    if full:
        row = closed_row(mod) if mod.n >= 2 else brute_row(mod)
        return float(np.abs(row).max()) / sqrt_q
    a_range = range(1, q) if a_range is None else a_range
    b_range = range(q) if b_range is None else b_range
    row = closed_row(mod) if mod.n >= 2 else brute_row(mod)
    worst = 0.0
    for a in a_range:
        if a % mod.p == 0:
            raise ValidationError(f"a = {a} is not a unit mod {q}")
        for b in b_range:
            worst = max(worst, abs(float(row[a * b % q])))
    return worst / sqrt_q


def stationary_decomposition(query: KloostermanQuery) -> list[tuple[int, int]]:
    """The two phase terms of the critical-point expansion.

    Returns [(s_0, phi_0), (s_1, phi_1)] with phi_j = 2*a*root*mu0^j mod q,
    where root^2 = inv(a)*b (mod q) and mu0 = -1 is the nontrivial square
    root of unity.  The signs s_j are all +1 except in the odd-n,
    q = 3 (mod 4) case where s_j = (-1)^j.  For even n,
    p^(n/2) * sum(s_j * e_q(phi_j)) equals the closed form exactly; for odd
    n the identity holds in absolute value (the remaining unimodular
    prefactor carries an undetermined sign).
    """
    mod = query.modulus
    if mod.n < 2:
        raise RequiresNAtLeastTwo("decomposition needs n >= 2")
    p, q = mod.p, mod.q
    b = query.b % q
    if b % p == 0:
        from .errors import ZeroInput

        raise ZeroInput(f"p = {p} divides b = {b}")
    ab = query.a * b % q
    if jacobi_symbol(ab, p) == -1:
        raise NonResidue(f"{query.a}*{b} is not a square mod {p}")
    a_inv_b = pow(query.a, -1, q) * b % q
    root = sqrt_mod_prime_power(a_inv_b, mod).r1
    phi0 = 2 * query.a * root % q
    phi1 = (q - phi0) % q
    alternating = mod.n % 2 == 1 and q % 4 == 3
    return [(1, phi0), (-1 if alternating else 1, phi1)]


def decomposition_sum(query: KloostermanQuery) -> complex:
    """p^(n/2) times the signed sum of the decomposition's phase terms."""
    mod = query.modulus
    terms = stationary_decomposition(query)
    scale = mod.p ** (mod.n / 2.0)
    total = 0j
    for sign, phase in terms:
        ang = 2.0 * math.pi * phase / mod.q
        total += sign * complex(math.cos(ang), math.sin(ang))
    return scale * total
