"""Weyl differencing, subset-sum profiles, and the counting lemmas.

The depth-1 differencing inequality is asserted in its provable form
(split the interval by residue class mod p^s, Cauchy-Schwarz, regroup by
shift); the diagonal term is kept as the computed h = 0 correlation, not
the looser closed-form envelope, which is only reported.  Deeper
differencing is a measurement: the implied constants are unknown.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import (
    HTooSmall,
    InvalidC,
    SearchTooLarge,
    TupleTooLong,
    ValidationError,
)
from .kloosterman import brute_row
from .residue import PrimePowerModulus, unit_circle

_MAX_PROFILE_LEN = 20
_PARITY_BUDGET = 10_000_000
_COLLISION_BUDGET = 10_000_000
_DEPTH_BUDGET = 100_000_000


@dataclass(frozen=True)
class SubsetProfile:
    """Multiset of subset sums of (p^s * h_1, ..., p^s * h_L) mod q.

    ``support`` lists the distinct residues hit (ascending), ``mu`` the
    number of subsets landing on each; the multiplicities sum to 2^L.
    """

    h: tuple[int, ...]
    s: int
    modulus: PrimePowerModulus
    support: tuple[int, ...]
    mu: tuple[int, ...]


@dataclass(frozen=True)
class ParityReport:
    p: int
    L: int
    H_bound: int
    s: int
    tuples_scanned: int
    counterexamples: int


@dataclass(frozen=True)
class NearCollisionResult:
    count: int
    envelope_bound: float


@dataclass(frozen=True)
class WeylL1Result:
    lhs: float
    rhs_exact: float
    rhs_envelope: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs_exact * (1 + 1e-9) + 1e-9


@dataclass(frozen=True)
class WeylDepthResult:
    lhs: float
    rhs: float
    ratio: float


def subset_profile(h, s: int, modulus: PrimePowerModulus) -> SubsetProfile:
    """Enumerate all 2^L subsets of the scaled tuple and aggregate residues."""
    h = tuple(int(v) for v in h)
    if len(h) > _MAX_PROFILE_LEN:
        raise TupleTooLong(f"tuple of length {len(h)} exceeds the cap {_MAX_PROFILE_LEN}")
    if any(v == 0 for v in h):
        raise ValidationError("all tuple entries must be nonzero")
    if s < 1:
        raise ValidationError(f"shift exponent must be >= 1, got {s}")
    q = modulus.q
    scale = pow(modulus.p, s, q)
    counts: dict[int, int] = {}
    for mask in range(1 << len(h)):
        total = 0
        for j, hj in enumerate(h):
            if (mask >> j) & 1:
                total += hj
        tau = (scale * total) % q
        counts[tau] = counts.get(tau, 0) + 1
    support = tuple(sorted(counts))
    return SubsetProfile(h=h, s=s, modulus=modulus, support=support,
                         mu=tuple(counts[t] for t in support))


def parity_forces_divisibility(p: int, L: int, H_bound: int, s: int = 1) -> ParityReport:
    """Exhaustively confirm: an all-even subset-sum profile forces p | h_i.

    Scans every tuple with 1 <= |h_j| <= H_bound.  The profile is the one
    of p^s * h_j modulo p^(s+1), which coincides with the raw subset sums
    of h modulo p; a counterexample is a tuple whose profile
    multiplicities are all even while no entry is divisible by p.  The
    count returned must be zero.
    """
    if L < 1 or H_bound < 1:
        raise ValidationError("need L >= 1 and H_bound >= 1")
    if s < 1:
        raise ValidationError(f"shift exponent must be >= 1, got {s}")
    budget = (p ** L) * (2 * H_bound) ** L
    if budget > _PARITY_BUDGET:
        raise SearchTooLarge(f"{budget} tuple-residue pairs exceed the scan budget")
    bad = int(_kernels.parity_scan(p, L, H_bound))
    return ParityReport(p=p, L=L, H_bound=H_bound, s=s,
                        tuples_scanned=(2 * H_bound) ** L, counterexamples=bad)


def near_collision_count(L: int, K: float, Q, modulus: PrimePowerModulus,
                         c: Fraction) -> NearCollisionResult:
    """Count shift tuples with a deep p-adic near-collision of subset sums.

    A tuple h with 1 <= |h_j| <= K/Q_j counts when two distinct subset
    sums H_I != H_J satisfy |H_I - H_J|_p < p^(-c*n), i.e. exactly when
    the valuation v_p(H_I - H_J) exceeds c*n; the comparison is exact
    rational (v > c*n over Z).  The reported bound is
    2^L * (n+1)^(2L-1) * p^(-c*n) * K^L / (Q_1 ... Q_L).

    The enumeration is run twice, in opposite orders, and the two counts
    must agree.
    """
    c = Fraction(c)
    Q = tuple(Q)
    if len(Q) != L:
        raise ValidationError(f"need {L} range divisors, got {len(Q)}")
    if not 0 < c <= Fraction(1, 2 ** (2 ** L)):
        raise InvalidC(f"c = {c} outside (0, 2^-2^{L}]")
    p, n = modulus.p, modulus.n
    bounds = [int(math.floor(K / qj)) for qj in Q]
    envelope_bound = float(2 ** L * (n + 1) ** (2 * L - 1)
                        * float(p) ** float(-c * n) * K ** L / math.prod(Q))
    if any(b < 1 for b in bounds):
        return NearCollisionResult(count=0, envelope_bound=envelope_bound)
    total = math.prod(2 * b for b in bounds)
    if total > _COLLISION_BUDGET:
        raise SearchTooLarge(f"{total} tuples exceed the enumeration budget")
    # v > c*n over the integers: v >= floor(c*n) + 1 in every case
    v_min = (c * n).numerator // (c * n).denominator + 1
    barr = np.asarray(bounds, dtype=np.int64)
    count = int(_kernels.near_collision_scan(barr, p, v_min, False))
    recheck = int(_kernels.near_collision_scan(barr, p, v_min, True))
    if count != recheck:
        raise ArithmeticError(f"enumeration orders disagree: {count} vs {recheck}")
    return NearCollisionResult(count=count, envelope_bound=envelope_bound)


def _product_of_rows(row, q: int, a: int, k: int, offsets) -> float:
    val = 1.0
    for off in offsets:
        val *= float(row[a * ((k + off) % q) % q])
    return val


def weyl_l1_inequality(a: int, modulus: PrimePowerModulus, s: int, K: int,
                       N: int, shifts, c: int = 0) -> WeylL1Result:
    """Depth-1 differencing bound for S = sum over (N, N+K] of
    e_q(c*k) * prod_j Kl(a, k + s_j; q).

    lhs = |S|^2.  rhs_exact = p^s * sum over |h| <= H (h = 0 included) of
    |sum over k in the overlap of the interval with its p^s*h shift of
    prod_j Kl(a, k+s_j; q) * Kl(a, k+p^s*h+s_j; q)|, with H = floor(K/p^s).
    lhs <= rhs_exact is asserted: split S by residue class mod p^s, apply
    Cauchy-Schwarz to the p^s class sums, and regroup the squares by the
    shift h.  rhs_envelope replaces the h = 0 term with the envelope
    K * q^(#shifts) and is reported only.
    """
    mod = modulus
    q, p = mod.q, mod.p
    if math.gcd(a, q) != 1:
        raise ValidationError(f"a = {a} is not a unit mod {q}")
    if not 1 <= s <= mod.n:
        raise ValidationError(f"need 1 <= s <= n, got s={s}")
    if K < 1:
        raise ValidationError("interval length must be >= 1")
    ps = p ** s
    H = K // ps
    if H < 1:
        raise HTooSmall(f"floor(K / p^s) = {H} < 1")
    shifts = tuple(int(v) for v in shifts)
    row = brute_row(mod)

    def prod_at(k: int) -> float:
        return _product_of_rows(row, q, a % q, k, shifts)

    S = 0j
    for k in range(N + 1, N + K + 1):
        S += unit_circle(c * k, q) * prod_at(k)
    lhs = abs(S) ** 2

    rhs_exact = 0.0
    tail = 0.0
    for h in range(-H, H + 1):
        inner = 0.0
        lo = max(N + 1, N + 1 - ps * h)
        hi = min(N + K, N + K - ps * h)
        for k in range(lo, hi + 1):
            inner += prod_at(k) * prod_at(k + ps * h)
        rhs_exact += abs(inner)
        if h != 0:
            tail += abs(inner)
    rhs_exact = float(rhs_exact) * ps
    rhs_envelope = float(ps * (K * float(q) ** len(shifts) + tail))
    result = WeylL1Result(lhs=lhs, rhs_exact=rhs_exact, rhs_envelope=rhs_envelope)
    assert result.holds, f"differencing inequality violated: {lhs} > {rhs_exact}"
    return result


def weyl_depth_ratio(a: int, modulus: PrimePowerModulus, s: int, K: int,
                     N: int, l: int, c: int = 0) -> WeylDepthResult:
    """|S(N)|^(2^l) against the depth-l differencing right-hand side with
    unit constant.  Measurement only.

    rhs = q^(2^(l-1)) * sum_{j=1..l} (p^s)^(2^(l-j)) * K^(2^l - 2^(l-j))
          + K^(2^l - l - 1) * (p^s)^l * sum over nonzero shift tuples of
            |sum over the shifted interval of the 2^l-fold product|.

    The inner products run over all subsets of the shift tuple, collapsed
    through the subset-sum profile (equal offsets raise the power).
    """
    mod = modulus
    q, p = mod.q, mod.p
    if l < 1:
        raise ValidationError(f"depth must be >= 1, got {l}")
    if math.gcd(a, q) != 1:
        raise ValidationError(f"a = {a} is not a unit mod {q}")
    ps = p ** s
    H = K // ps
    if H < 1:
        raise HTooSmall(f"floor(K / p^s) = {H} < 1")
    budget = (2 ** l) * (2 * H) ** l * K
    if budget > _DEPTH_BUDGET:
        raise SearchTooLarge(f"{budget} evaluations exceed the budget")
    row = brute_row(mod)

    S = 0j
    for b in range(N + 1, N + K + 1):
        S += unit_circle(c * b, q) * row[a * (b % q) % q]
    lhs = abs(S) ** (2 ** l)

    term1 = 0.0
    for j in range(1, l + 1):
        term1 += float(ps) ** (2 ** (l - j)) * float(K) ** (2 ** l - 2 ** (l - j))
    term1 *= float(q) ** (2 ** (l - 1))

    shift_sum = 0.0
    nonzero = [hh for hh in range(-H, H + 1) if hh != 0]
    for hs in itertools.product(nonzero, repeat=l):
        prof = subset_profile(hs, s, mod)
        shift = ps * sum(hs)
        inner = 0.0
        for k in range(N + 1 - shift, N + K + 1 - shift):
            val = 1.0
            for tau, m in zip(prof.support, prof.mu):
                val *= row[a * ((k + tau) % q) % q] ** m
            inner += val
        shift_sum += abs(inner)
    term2 = float(K) ** (2 ** l - l - 1) * float(ps) ** l * shift_sum
    rhs = term1 + term2
    ratio = lhs / rhs if rhs > 0 else 0.0
    return WeylDepthResult(lhs=lhs, rhs=rhs, ratio=ratio)
