"""Divisor counts in arithmetic progressions, with exact error terms.

The progression sum D(q, a; X) and its coprime-class average are exact
integers / rationals (`fractions.Fraction`), so the error term E never
suffers cancellation; floating point only enters the reporting field
|E| * q / X and the fitted exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import LimitTooLarge, NotCoprime, OutOfTable, ValidationError
from .residue import PrimePowerModulus

_MAX_X = 1 << 31


@dataclass(frozen=True)
class TauTable:
    """Sieved divisor counts tau(1..limit); values[0] is unused."""

    limit: int
    values: np.ndarray

    def total(self, upto: int | None = None) -> int:
        upto = self.limit if upto is None else upto
        if upto > self.limit:
            raise OutOfTable(f"{upto} exceeds the sieve limit {self.limit}")
        return int(self.values[1:upto + 1].sum(dtype=np.int64))


@dataclass(frozen=True)
class ErrorRecord:
    q: int
    a: int
    X: int
    D_value: int
    main_term: Fraction
    E_value: Fraction
    normalized: float


@dataclass(frozen=True)
class ScanRow:
    X: int
    max_normalized: float
    argmax_a: int


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[ScanRow, ...]
    delta_emp: float | None


def tau_sieve(X: int) -> TauTable:
    """tau(n) for all n <= X by marking divisor pairs (d, n/d), d <= sqrt(n)."""
    if X < 1:
        raise ValidationError(f"sieve limit must be >= 1, got {X}")
    if X > _MAX_X:
        raise LimitTooLarge(f"X = {X} exceeds the 2^31 sieve cap")
    return TauTable(limit=X, values=_kernels.tau_sieve_values(X))


def hyperbola_total(X: int) -> int:
    """sum of tau(n) for n <= X, independently: 2*sum floor(X/d) - floor(sqrt X)^2."""
    if X < 0:
        raise ValidationError("X must be nonnegative")
    if X == 0:
        return 0
    r = math.isqrt(X)
    return 2 * sum(X // d for d in range(1, r + 1)) - r * r


def progression_divisor_sum(q: int, a: int, X: int, table: TauTable) -> int:
    """D(q, a; X): exact sum of tau(n) over n <= X with n = a (mod q)."""
    if not 0 <= a < q:
        raise ValidationError(f"need 0 <= a < q, got a={a}, q={q}")
    if X > table.limit:
        raise OutOfTable(f"X = {X} exceeds the sieve limit {table.limit}")
    if X <= 0:
        return 0
    start = a if a >= 1 else q
    if start > X:
        return 0
    return int(table.values[start:X + 1:q].sum(dtype=np.int64))


def main_term(modulus: PrimePowerModulus, X: int, table: TauTable) -> Fraction:
    """(1/phi(q)) * sum of tau(n) over n <= X coprime to q, exactly."""
    if X > table.limit:
        raise OutOfTable(f"X = {X} exceeds the sieve limit {table.limit}")
    if X <= 0:
        return Fraction(0)
    p = modulus.p
    total = int(table.values[1:X + 1].sum(dtype=np.int64))
    divisible = int(table.values[p:X + 1:p].sum(dtype=np.int64)) if p <= X else 0
    return Fraction(total - divisible, modulus.phi)


def error_term(modulus: PrimePowerModulus, a: int, X: int, table: TauTable) -> ErrorRecord:
    """E(q, a; X) = D(q, a; X) - main term, exact; normalized = |E| * q / X."""
    q = modulus.q
    if math.gcd(a, q) != 1:
        raise NotCoprime(f"a = {a} shares a factor with q = {q}")
    d_val = progression_divisor_sum(q, a % q, X, table)
    main = main_term(modulus, X, table)
    e_val = d_val - main
    normalized = abs(float(e_val)) * q / X if X > 0 else 0.0
    return ErrorRecord(q=q, a=a % q, X=X, D_value=d_val, main_term=main,
                       E_value=e_val, normalized=normalized)


def sup_error_scan(modulus: PrimePowerModulus, X_grid, table: TauTable) -> ScanResult:
    """Worst-case normalized error over the coprime classes, per grid point,
    plus the least-squares exponent fitted to log(q * max|E|) vs log X.

    The fitted slope is 1 - delta_emp; grid points where the maximum error
    is exactly zero carry no logarithm and are excluded from the fit.  A
    fit needs at least two usable points, otherwise delta_emp is None.
    """
    grid = list(X_grid)
    if any(x2 <= x1 for x1, x2 in zip(grid, grid[1:])):
        raise ValidationError("X grid must be strictly ascending")
    q, p = modulus.q, modulus.p
    rows = []
    log_x, log_y = [], []
    for X in grid:
        best = Fraction(-1)
        best_a = 0
        for a in range(1, q):
            if a % p == 0:
                continue
            rec = error_term(modulus, a, X, table)
            e_abs = abs(rec.E_value)
            if e_abs > best:
                best = e_abs
                best_a = a
        rows.append(ScanRow(X=X, max_normalized=float(best) * q / X, argmax_a=best_a))
        if best > 0:
            log_x.append(math.log(X))
            log_y.append(math.log(float(best) * q))
    delta_emp = None
    if len(log_x) >= 2:
        slope = float(np.polyfit(np.array(log_x), np.array(log_y), 1)[0])
        delta_emp = 1.0 - slope
    return ScanResult(rows=tuple(rows), delta_emp=delta_emp)
