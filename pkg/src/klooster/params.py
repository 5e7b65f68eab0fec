"""Closed-form constants for the admissible-range and differencing setup.

Everything is exact rational arithmetic; the range exponent
delta_nl = (1 - 3/2^(2^l+2l-3)) / (1 - 1/(n*2^(l-1))) is strictly
decreasing in n toward the limit 1 - 3/2^(2^l+2l-3), which it never
reaches for finite n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidL, ValidationError
from .residue import is_odd_prime


@dataclass(frozen=True)
class TheoremParams:
    l: int
    n: int
    p: int
    t_size: int
    delta1: Fraction
    delta2: Fraction
    delta3: Fraction
    rho: int
    d_l: int
    delta_nl: Fraction
    delta_nl_limit: Fraction
    delta_subdivision: Fraction
    k_min_exponent: Fraction
    n_min_range: int
    n_min_weighted: int
    satisfies_range_hypothesis: bool
    satisfies_weighted_hypothesis: bool


def _ceil_log(base: int, value: int) -> int:
    """Smallest r >= 0 with base^r >= value, in exact integers."""
    r = 0
    power = 1
    while power < value:
        power *= base
        r += 1
    return r


def theorem_parameters(l: int, n: int, p: int) -> TheoremParams:
    """All derived constants for depth l, exponent n, odd prime p.

    The support-size-dependent constants are taken at the maximal support
    |T| = 2^l.  The hypothesis flags record whether n clears the
    admissible-range threshold 2^(2^(l+1)+6l) and the weighted-sum
    threshold 2^(2^l+3l).
    """
    if l < 2:
        raise InvalidL(f"depth l must be >= 2, got {l}")
    if n < 1:
        raise ValidationError(f"exponent n must be >= 1, got {n}")
    if not is_odd_prime(p):
        raise ValidationError(f"{p} is not an odd prime")
    t_size = 2 ** l
    delta1 = Fraction(1, 2 ** t_size)
    delta2 = delta1
    delta3 = Fraction(1, math.comb(t_size, 2))
    rho = (1 if p <= 2 * t_size - 1 else 0) + _ceil_log(p, 2 * 2 ** l)
    inner = math.floor(Fraction(n, 2 ** t_size)) - rho
    d_l = math.floor(delta3 * inner)
    numerator = 1 - Fraction(3, 2 ** (2 ** l + 2 * l - 3))
    delta_nl = numerator / (1 - Fraction(1, n * 2 ** (l - 1)))
    n_min_range = 2 ** (2 ** (l + 1) + 6 * l)
    n_min_weighted = 2 ** (2 ** l + 3 * l)
    return TheoremParams(
        l=l,
        n=n,
        p=p,
        t_size=t_size,
        delta1=delta1,
        delta2=delta2,
        delta3=delta3,
        rho=rho,
        d_l=d_l,
        delta_nl=delta_nl,
        delta_nl_limit=numerator,
        delta_subdivision=Fraction(1, 2 ** (2 ** l + 2 * l - 2)),
        k_min_exponent=Fraction(n, 2 ** (2 ** l + 2 * l - 1)) + 1,
        n_min_range=n_min_range,
        n_min_weighted=n_min_weighted,
        satisfies_range_hypothesis=n > n_min_range,
        satisfies_weighted_hypothesis=n > n_min_weighted,
    )
