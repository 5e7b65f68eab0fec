"""Square-root phase functions on residue classes, and character sums.

Products of Kloosterman values decompose into exponentials of weighted
sums of modular square roots; these phase functions are evaluated here
on the residue classes where every argument is a unit square, together
with the complete class sums they generate and the mixed character sum
that counts admissible classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    NonResidueAtTau,
    NonUnitAtTau,
    SearchTooLarge,
    ValidationError,
)
from .residue import (
    PrimePowerModulus,
    is_odd_prime,
    jacobi_symbol,
    sqrt_mod_prime_power,
    unit_circle,
)

_CLASS_SUM_BUDGET = 10_000_000
_SQRT_TABLE_MAX_Q = 1 << 24
_VECTOR_MAX_Q = 1 << 31
_MAX_T_SIZE = 5


@dataclass(frozen=True)
class PhaseSpec:
    """A phase function f(k) = 2*a * sum over tau of eps_tau * root(inv(a)*(k+tau)),
    restricted to the class k = d_class (mod p).

    Admissibility depends only on the class: construction verifies that
    inv(a)*(d_class + tau) is a nonzero square mod p for every offset, so
    every k in the class admits all the roots.
    """

    support: tuple[int, ...]
    eps: tuple[int, ...]
    a: int
    modulus: PrimePowerModulus
    d_class: int

    def __post_init__(self):
        mod = self.modulus
        if len(self.support) != len(self.eps):
            raise ValidationError("support and eps must have equal length")
        if len(set(t % mod.q for t in self.support)) != len(self.support):
            raise ValidationError("support offsets must be distinct mod q")
        if math.gcd(self.a, mod.q) != 1:
            raise ValidationError(f"a = {self.a} is not a unit mod {mod.q}")
        a_inv = pow(self.a, -1, mod.p)
        for tau in self.support:
            arg = a_inv * (self.d_class + tau) % mod.p
            if arg == 0:
                raise NonUnitAtTau(tau)
            if jacobi_symbol(arg, mod.p) != 1:
                raise NonResidueAtTau(tau)


@dataclass(frozen=True)
class ClassSumResult:
    value: complex
    bound: float
    ratio: float
    points: int


@dataclass(frozen=True)
class MixedCharResult:
    value: complex
    main: float
    error: complex


def phase_eval(spec: PhaseSpec, k: int) -> int:
    """f(k) mod q, using the canonical full-modulus square roots.

    Every root is re-verified by squaring before use.
    """
    mod = spec.modulus
    q, p = mod.q, mod.p
    if (k - spec.d_class) % p != 0:
        raise ValidationError(f"k = {k} is not in the class {spec.d_class} mod {p}")
    a_inv = pow(spec.a, -1, q)
    total = 0
    for tau, weight in zip(spec.support, spec.eps):
        arg = a_inv * ((k + tau) % q) % q
        if arg % p == 0:
            raise NonUnitAtTau(tau)
        if jacobi_symbol(arg, p) != 1:
            raise NonResidueAtTau(tau)
        root = sqrt_mod_prime_power(arg, mod).r1
        if (root * root - arg) % q != 0:
            raise ArithmeticError(f"root verification failed at offset {tau}")
        total += weight * root
    return 2 * spec.a * total % q


def _root_vector(args: np.ndarray, mod: PrimePowerModulus) -> np.ndarray:
    """Canonical square roots of an array of unit squares mod q."""
    q = mod.q
    if q <= _SQRT_TABLE_MAX_Q:
        table = _kernels.sqrt_table(q, mod.p)
        roots = table[args]
    else:
        roots = np.array([sqrt_mod_prime_power(int(v), mod).r1 for v in args],
                         dtype=np.int64)
    if ((roots * roots - args) % q != 0).any():
        raise ArithmeticError("vectorized root verification failed")
    return roots


def complete_class_sum(spec: PhaseSpec, r: int) -> ClassSumResult:
    """sum over k mod p^n with k = d_class (mod p) of e_q(f(k) + r*k),
    measured against p^((1 - 2^-|T|) * n).

    Direct enumeration over the p^(n-1) class points; the bound's constant
    is not established here, only the ratio is reported.
    """
    mod = spec.modulus
    q, p, n = mod.q, mod.p, mod.n
    points = p ** (n - 1)
    if points > _CLASS_SUM_BUDGET:
        raise SearchTooLarge(f"{points} class points exceed the budget")
    if q <= _VECTOR_MAX_Q:
        ks = (spec.d_class + p * np.arange(points, dtype=np.int64)) % q
        a_inv = pow(spec.a, -1, q)
        phase = np.zeros(points, dtype=np.int64)
        for tau, weight in zip(spec.support, spec.eps):
            args = a_inv * ((ks + tau) % q) % q
            if ((args % p) == 0).any():
                raise NonUnitAtTau(tau)
            roots = _root_vector(args, mod)
            phase = (phase + weight * roots) % q
        phase = (2 * spec.a % q) * phase % q
        ang = (2.0 * np.pi / q) * ((phase + (r % q) * ks) % q)
        value = complex(np.cos(ang).sum(), np.sin(ang).sum())
    else:
        # int64 products would overflow; fall back to exact Python ints
        value = 0j
        for t in range(points):
            k = (spec.d_class + p * t) % q
            value += unit_circle(phase_eval(spec, k) + r * k, q)
    t_size = len(spec.support)
    bound = float(p) ** ((1.0 - 2.0 ** -t_size) * n) if t_size else float(points)
    ratio = abs(value) / bound if bound > 0 else 0.0
    return ClassSumResult(value=value, bound=bound, ratio=ratio, points=points)


def mixed_character_sum(A: int, T, C: int, p: int) -> MixedCharResult:
    """sum over d mod p, with A*(d+tau) a nonzero square for every tau in T,
    of e_p(d*C).

    The main term is 2^-|T| * p when p | C (and zero otherwise); the
    error is the difference, asserted below (|T|+2) * sqrt(p).
    """
    from .residue import is_odd_prime

    if not is_odd_prime(p):
        raise ValidationError(f"{p} is not an odd prime")
    T = tuple(t % p for t in T)
    if len(set(T)) != len(T):
        raise ValidationError("offsets in T must be distinct mod p")
    if len(T) > _MAX_T_SIZE:
        raise ValidationError(f"|T| capped at {_MAX_T_SIZE}, got {len(T)}")
    if A % p == 0:
        raise ValidationError(f"A must be a unit mod {p}")
    leg = _kernels.legendre_table(p)
    ds = np.arange(p, dtype=np.int64)
    admissible = np.ones(p, dtype=bool)
    for tau in T:
        admissible &= leg[(A % p) * ((ds + tau) % p) % p] == 1
    ang = (2.0 * np.pi / p) * ((ds[admissible] * (C % p)) % p)
    value = complex(np.cos(ang).sum(), np.sin(ang).sum())
    main = 2.0 ** -len(T) * p * (1.0 if C % p == 0 else 0.0)
    error = value - main
    limit = (len(T) + 2) * math.sqrt(p)
    assert abs(error) <= limit, f"character-sum error {abs(error)} exceeds {limit}"
    return MixedCharResult(value=value, main=main, error=error)


def admissible_class_representatives(a: int, support, modulus: PrimePowerModulus):
    """All d mod p for which every inv(a)*(d+tau) is a nonzero square mod p."""
    p = modulus.p
    a_inv = pow(a, -1, p)
    leg = _kernels.legendre_table(p)
    out = []
    for d in range(p):
        if all(leg[a_inv * ((d + tau) % p) % p] == 1 for tau in support):
            out.append(d)
    return out
