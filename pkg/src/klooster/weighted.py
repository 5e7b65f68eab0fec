"""Weighted Kloosterman sums over intervals and their completion.

An incomplete sum over an interval is exchanged for complete sums
weighted by a geometric window; the identity is exact and is checked
here numerically against direct summation.  The block-maximum ``kappa``
and the interval sums S feed the measurement harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IntervalTooLong, ValidationError
from .kloosterman import brute_row, closed_row, exp_sum_row
from .residue import PrimePowerModulus, unit_circle

_BRUTE_SUM_MAX_Q = 1 << 24


@dataclass(frozen=True)
class Interval:
    """Half-open-below interval (start, start + length] of integers.

    ``length`` may be a positive real; the integer members are
    start+1 .. start+floor(length).
    """

    start: int
    length: float

    def __post_init__(self):
        if self.length < 0:
            raise ValidationError(f"interval length must be >= 0, got {self.length}")

    @property
    def count(self) -> int:
        return int(math.floor(self.length))

    def points(self) -> range:
        return range(self.start + 1, self.start + self.count + 1)


@dataclass(frozen=True)
class WeightedSumSpec:
    a: int
    M: int
    modulus: PrimePowerModulus
    interval: Interval

    def __post_init__(self):
        if math.gcd(self.a, self.modulus.q) != 1:
            raise ValidationError(f"a = {self.a} is not a unit mod {self.modulus.q}")


@dataclass(frozen=True)
class Thm2Measurement:
    value: complex
    abs_value: float
    denominator: float
    ratio: float
    k_threshold: float
    meets_threshold: bool


def _kl_row(modulus: PrimePowerModulus, kl_method: str) -> np.ndarray:
    if kl_method == "brute":
        if modulus.q > _BRUTE_SUM_MAX_Q:
            raise ValidationError(f"brute method guarded at q <= 2^24, got {modulus.q}")
        return brute_row(modulus)
    if kl_method == "closed":
        return closed_row(modulus)
    raise ValidationError(f"unknown kl method {kl_method!r}")


def _first_arg_lookup(A: int, modulus: PrimePowerModulus):
    """s -> sum over units x of e_q(A*inv(x) + s*x), as a fast callable.

    For a unit A the substitution x -> inv(A)*x turns the sum into the
    cached row at index A*s; otherwise a dedicated row is built.
    """
    q = modulus.q
    A %= q
    if math.gcd(A, q) == 1:
        base = brute_row(modulus)
        return lambda s: float(base[A * (s % q) % q])
    base = exp_sum_row(A, modulus)
    return lambda s: float(base[s % q])


def weighted_sum(spec: WeightedSumSpec, kl_method: str = "brute") -> complex:
    """sum over b in the interval of e_q(-M*b) * Kl(a, b; q)."""
    mod = spec.modulus
    q = mod.q
    row = _kl_row(mod, kl_method)
    if spec.interval.count == 0:
        return 0j
    bs = np.arange(spec.interval.start + 1,
                   spec.interval.start + spec.interval.count + 1, dtype=np.int64)
    vals = row[(spec.a % q) * (bs % q) % q]
    ang = (2.0 * np.pi / q) * ((-spec.M * bs) % q)
    total = (vals * np.cos(ang)).sum() + 1j * (vals * np.sin(ang)).sum()
    return complex(total)


def thm2_ratio(spec: WeightedSumSpec, l: int, kl_method: str = "brute") -> Thm2Measurement:
    """|S| normalized by floor(K) * p^(n/2 - 1/2^l), with the K-threshold flag.

    Pure measurement: the implied constant in the asymptotic bound is
    unknown, so nothing is asserted about the ratio.
    """
    if l < 1:
        raise ValidationError(f"depth l must be >= 1, got {l}")
    mod = spec.modulus
    count = spec.interval.count
    value = weighted_sum(spec, kl_method)
    denom = count * mod.p ** (mod.n / 2.0 - 2.0 ** -l)
    ratio = abs(value) / denom if denom > 0 else 0.0
    threshold_exp = Fraction(mod.n, 2 ** (2 ** l + 2 * l - 1)) + 1
    k_threshold = float(mod.p) ** float(threshold_exp)
    return Thm2Measurement(
        value=value,
        abs_value=abs(value),
        denominator=denom,
        ratio=ratio,
        k_threshold=k_threshold,
        meets_threshold=spec.interval.length >= k_threshold,
    )


def geometric_window(w: int, s: int, U1: int, length: int) -> complex:
    """Window weight g_w(s) = e_w(s*U1) * sum over the interval
    (U1, U1+length] of e_w(-s*d); the U1 factors cancel, leaving the
    geometric sum of e_w(-s*j) for j = 1..length.

    Satisfies |g_w(s)| <= min(length, 1 / (2*||s/w||)) + 1.
    """
    if w < 1:
        raise ValidationError(f"window modulus must be >= 1, got {w}")
    if length < 0:
        raise ValidationError(f"window length must be >= 0, got {length}")
    if length == 0:
        return 0j
    if s % w == 0:
        return complex(length)
    z = unit_circle(-s, w)
    z_len = unit_circle(-s * length, w)
    return z * (z_len - 1) / (z - 1)


@dataclass(frozen=True)
class CompletionCheck:
    lhs: complex
    rhs: complex
    difference: float


def completion_identity_check(a: int, k: int, modulus: PrimePowerModulus,
                              U1: int, length: int) -> CompletionCheck:
    """Exchange an incomplete unit sum for complete sums with window weights.

    lhs = sum over units u in (U1, U1+length] of e_q(a*k*inv(u));
    rhs = (1/q) * sum over |s| <= (q-1)/2 of e_q(-s*U1) * R(ka, s) * g_q(s)
    where R is the generalized row (the first argument ka may share a
    factor with q; only the left side restricts u to the units).  The
    identity is exact; the returned difference is floating slack only and
    is asserted below 1e-6 * sqrt(q).
    """
    q, p = modulus.q, modulus.p
    if length > q:
        raise IntervalTooLong(f"interval length {length} exceeds the modulus {q}")
    if length < 0:
        raise ValidationError("interval length must be >= 0")
    lhs = 0j
    for u in range(U1 + 1, U1 + length + 1):
        if u % p == 0:
            continue
        u_inv = pow(u % q, -1, q)
        lhs += unit_circle(a * k % q * u_inv, q)
    kl_at = _first_arg_lookup(k * a, modulus)
    rhs = 0j
    half = (q - 1) // 2
    for s in range(-half, half + 1):
        g = geometric_window(q, s, U1, length)
        if g == 0:
            continue
        rhs += unit_circle(-s * U1, q) * kl_at(s) * g
    rhs /= q
    diff = abs(lhs - rhs)
    tol = 1e-6 * math.sqrt(q)
    assert diff <= tol, f"completion identity off by {diff} (tolerance {tol})"
    return CompletionCheck(lhs=lhs, rhs=rhs, difference=diff)


def kappa(a: int, k: int, modulus: PrimePowerModulus, U1: int, K: int,
          block: int = 1) -> float:
    """Maximum prefix magnitude of the windowless completed sums in one block.

    The block at index ``block`` covers s = (K-1)*block + 1 .. (K-1)*block + K;
    the result is max over R = 1..K of
    |sum_{s <= (K-1)*block + R} e_q(-s*U1) * R(ka, s)|.
    """
    if K < 1:
        raise ValidationError(f"block length K must be >= 1, got {K}")
    q = modulus.q
    kl_at = _first_arg_lookup(k * a, modulus)
    base = (K - 1) * block
    total = 0j
    best = 0.0
    for s in range(base + 1, base + K + 1):
        total += unit_circle(-s * U1, q) * kl_at(s)
        best = max(best, abs(total))
    return best
